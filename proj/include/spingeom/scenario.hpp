#pragma once

// Scenario files: one JSON document describing a BMT or Hamiltonian run.
// The schema is documented in docs/scenario.md.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "spingeom/bmt.hpp"
#include "spingeom/errors.hpp"
#include "spingeom/hamiltonian.hpp"

namespace spingeom::scenario {

/// Malformed or inconsistent input. The message names the offending field.
class InputError : public Error {
 public:
  using Error::Error;
};

enum class Kind { bmt, hamiltonian };

std::string to_string(Kind k);

struct OutputControls {
  int stride = 1;
  std::vector<std::string> monitors;  ///< subset of monitor_names(kind)
};

struct BMTSetup {
  bmt::BMTParams params;
  bmt::EMField field;
  bmt::BMTState initial;
  bmt::Method method = bmt::Method::rk4;
};

struct HamiltonianSetup {
  ham::ExternalFields fields;
  ham::PhaseState initial;
  ham::Method method = ham::Method::rk4_group;
  ops::DerivativeStencil stencil;
};

struct Scenario {
  Kind kind = Kind::bmt;
  std::string field_type;
  double dt = 0.0;
  int nsteps = 0;
  OutputControls output;
  std::map<std::string, double> tolerances;  ///< monitor name → allowed drift
  std::optional<BMTSetup> bmt;
  std::optional<HamiltonianSetup> ham;

  std::string method_name() const;
};

const std::vector<std::string>& monitor_names(Kind kind);

/// Throws InputError.
Scenario parse(const nlohmann::json& doc);

/// Reads and parses a file. Throws InputError.
Scenario load(const std::string& path);

}  // namespace spingeom::scenario
