#pragma once

#include <ostream>

#include "attlab/errors.hpp"
#include "config.hpp"

namespace attlab::tools {

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error:\n";
    for (const auto& d : e.diagnostics) err << "  " << d << '\n';
    return exit_usage;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << " (last good time " << e.last_good_time() << ")\n";
    return exit_numerical;
  } catch (const EvolveSetError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return exit_numerical;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const UnsupportedModel& e) {
    err << "unsupported: " << e.what() << '\n';
    return exit_usage;
  } catch (const nlohmann::json::exception& e) {
    err << "config error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
}

}  // namespace attlab::tools
