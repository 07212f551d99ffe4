#include "spingeom/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace spingeom::scenario {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw InputError("scenario: " + path + " " + what);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

const json& field(const json& obj, const std::string& path, const std::string& key) {
  if (!obj.is_object()) fail(path.empty() ? "(root)" : path, "must be an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(join(path, key), "is required");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "must be finite");
  return v;
}

double number(const json& obj, const std::string& path, const std::string& key) {
  return number(field(obj, path, key), join(path, key));
}

double positive(const json& obj, const std::string& path, const std::string& key) {
  const double v = number(obj, path, key);
  if (v <= 0.0) {
    std::ostringstream os;
    os << "must be positive (got " << v << ")";
    fail(join(path, key), os.str());
  }
  return v;
}

std::vector<double> numbers(const json& obj, const std::string& path, const std::string& key,
                            std::size_t n) {
  const json& j = field(obj, path, key);
  const std::string p = join(path, key);
  if (!j.is_array() || j.size() != n) {
    fail(p, "must be an array of " + std::to_string(n) + " numbers");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(number(j[i], p + "[" + std::to_string(i) + "]"));
  return out;
}

FourVector four(const json& obj, const std::string& path, const std::string& key) {
  const auto v = numbers(obj, path, key, 4);
  return FourVector(v[0], v[1], v[2], v[3]);
}

Eigen::Vector3d three(const json& obj, const std::string& path, const std::string& key) {
  const auto v = numbers(obj, path, key, 3);
  return Eigen::Vector3d(v[0], v[1], v[2]);
}

template <class Tag>
PairArray<Tag> pairs(const json& obj, const std::string& path, const std::string& key) {
  const auto v = numbers(obj, path, key, kPairCount);
  std::array<double, kPairCount> a{};
  std::copy(v.begin(), v.end(), a.begin());
  return PairArray<Tag>(a);
}

std::string text(const json& obj, const std::string& path, const std::string& key) {
  const json& j = field(obj, path, key);
  if (!j.is_string()) fail(join(path, key), "must be a string");
  return j.get<std::string>();
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return it.key() == k; });
    if (!known) fail(join(path, it.key()), "is not a recognized field");
  }
}

bmt::EMField bmt_field(const json& f, std::string& type) {
  type = text(f, "field", "type");
  try {
    if (type == "uniform" || type == "crossed") {
      reject_unknown(f, "field", {"type", "E", "B"});
      const Eigen::Vector3d e = three(f, "field", "E");
      const Eigen::Vector3d b = three(f, "field", "B");
      return type == "uniform" ? bmt::EMField::uniform(e, b) : bmt::EMField::crossed(e, b);
    }
    if (type == "plane-wave") {
      reject_unknown(f, "field", {"type", "amplitude", "k"});
      return bmt::EMField::plane_wave(pairs<FieldStrengthTag>(f, "field", "amplitude"),
                                      four(f, "field", "k"));
    }
  } catch (const DomainError& e) {
    fail("field", std::string("is invalid: ") + e.what());
  }
  fail("field.type", "must be one of uniform, crossed, plane-wave (got \"" + type + "\")");
}

ham::FieldSpec ham_field(const json& f, std::string& type) {
  type = text(f, "field", "type");
  if (type == "flat") {
    reject_unknown(f, "field", {"type"});
    return ham::fields::Flat{};
  }
  if (type == "constant-A") {
    reject_unknown(f, "field", {"type", "A"});
    return ham::fields::ConstantPotential{four(f, "field", "A")};
  }
  if (type == "linear-A") {
    reject_unknown(f, "field", {"type", "F"});
    return ham::fields::LinearPotential{pairs<FieldStrengthTag>(f, "field", "F")};
  }
  if (type == "diagonal-tetrad") {
    reject_unknown(f, "field", {"type", "scales"});
    return ham::fields::DiagonalTetrad{four(f, "field", "scales")};
  }
  if (type == "constant-omega") {
    reject_unknown(f, "field", {"type", "omega"});
    const json& rows = field(f, "field", "omega");
    if (!rows.is_array() || rows.size() != 4) {
      fail("field.omega", "must be an array of 4 rows of 6 numbers");
    }
    ham::Connection c{};
    for (std::size_t a = 0; a < 4; ++a) {
      const json wrapper{{"row", rows[a]}};
      c[a] = pairs<ham::ConnectionTag>(wrapper, "field.omega", "row");
    }
    return ham::fields::ConstantConnection{c};
  }
  fail("field.type",
       "must be one of flat, constant-A, linear-A, diagonal-tetrad, constant-omega (got \"" +
           type + "\")");
}

group::GroupElement lambda_from(const json& init) {
  const json& j = field(init, "initial", "lambda");
  if (!j.is_array() || j.size() != 4) {
    fail("initial.lambda", "must be 4 [re, im] pairs for entries 00, 01, 10, 11");
  }
  group::Matrix2c m;
  for (int k = 0; k < 4; ++k) {
    const std::string p = "initial.lambda[" + std::to_string(k) + "]";
    if (!j[k].is_array() || j[k].size() != 2) fail(p, "must be a [re, im] pair");
    m(k / 2, k % 2) = group::Complex(number(j[k][0], p + "[0]"), number(j[k][1], p + "[1]"));
  }
  try {
    return group::GroupElement::from_matrix(m);
  } catch (const Error& e) {
    fail("initial.lambda", std::string("is not in SL(2,C): ") + e.what());
  }
}

}  // namespace

std::string to_string(Kind k) { return k == Kind::bmt ? "bmt" : "hamiltonian"; }

std::string Scenario::method_name() const {
  return kind == Kind::bmt ? bmt::to_string(bmt->method) : ham::to_string(ham->method);
}

const std::vector<std::string>& monitor_names(Kind kind) {
  static const std::vector<std::string> b{"total_spin", "mass_shell", "transversality"};
  static const std::vector<std::string> h{"h", "total_spin", "q", "det_deviation"};
  return kind == Kind::bmt ? b : h;
}

Scenario parse(const json& doc) {
  if (!doc.is_object()) fail("(root)", "must be an object");
  Scenario sc;
  const std::string kind = text(doc, "", "kind");
  if (kind == "bmt") {
    sc.kind = Kind::bmt;
    reject_unknown(doc, "", {"kind", "params", "field", "initial", "dt", "nsteps", "method",
                             "output", "tolerances", "description"});
  } else if (kind == "hamiltonian") {
    sc.kind = Kind::hamiltonian;
    reject_unknown(doc, "", {"kind", "field", "initial", "dt", "nsteps", "method", "stencil",
                             "output", "tolerances", "description"});
  } else {
    fail("kind", "must be \"bmt\" or \"hamiltonian\" (got \"" + kind + "\")");
  }

  sc.dt = positive(doc, "", "dt");
  const json& ns = field(doc, "", "nsteps");
  if (!ns.is_number_integer() || ns.get<long long>() < 1 || ns.get<long long>() > 100000000) {
    fail("nsteps", "must be an integer in [1, 1e8]");
  }
  sc.nsteps = ns.get<int>();

  const json& f = field(doc, "", "field");
  const json& init = field(doc, "", "initial");
  if (!f.is_object()) fail("field", "must be an object");
  if (!init.is_object()) fail("initial", "must be an object");

  if (sc.kind == Kind::bmt) {
    const json& pj = field(doc, "", "params");
    reject_unknown(pj, "params", {"e", "m", "g", "c"});
    BMTSetup setup{bmt::BMTParams{}, bmt_field(f, sc.field_type), bmt::BMTState{}, bmt::Method::rk4};
    setup.params.e = number(pj, "params", "e");
    setup.params.m = positive(pj, "params", "m");
    setup.params.g = number(pj, "params", "g");
    setup.params.c = pj.contains("c") ? positive(pj, "params", "c") : 1.0;
    reject_unknown(init, "initial", {"x", "u", "S"});
    setup.initial.x = four(init, "initial", "x");
    setup.initial.u = four(init, "initial", "u");
    setup.initial.spin = pairs<SpinTag>(init, "initial", "S");
    if (setup.initial.u[0] <= 0.0) fail("initial.u[0]", "must be positive (future-directed)");
    if (doc.contains("method")) {
      try {
        setup.method = bmt::parse_method(text(doc, "", "method"));
      } catch (const Error&) {
        fail("method", "must be rk4 or rk4-projected for kind bmt");
      }
    }
    sc.bmt.emplace(std::move(setup));
  } else {
    std::string type;
    const ham::FieldSpec spec = ham_field(f, type);
    sc.field_type = type;
    ops::DerivativeStencil st;
    if (doc.contains("stencil")) {
      const json& sj = doc["stencil"];
      reject_unknown(sj, "stencil", {"h", "levels"});
      if (sj.contains("h")) st.h = positive(sj, "stencil", "h");
      if (sj.contains("levels")) {
        if (!sj["levels"].is_number_integer()) fail("stencil.levels", "must be an integer");
        st.levels = sj["levels"].get<int>();
      }
      try {
        st.validate();
      } catch (const DomainError& e) {
        fail("stencil", std::string("is invalid: ") + e.what());
      }
    }
    std::optional<ham::ExternalFields> fields;
    try {
      fields.emplace(ham::make_fields(spec));
    } catch (const SingularTetradError& e) {
      fail("field.scales", std::string("gives a singular tetrad: ") + e.what());
    }
    reject_unknown(init, "initial", {"x", "p", "S", "lambda", "phi", "q"});
    ham::PhaseState s;
    s.x = four(init, "initial", "x");
    s.p = four(init, "initial", "p");
    s.spin = pairs<SpinTag>(init, "initial", "S");
    s.lambda = init.contains("lambda") ? lambda_from(init) : group::GroupElement::identity();
    s.phi = init.contains("phi") ? number(init, "initial", "phi") : 0.0;
    s.q = number(init, "initial", "q");
    HamiltonianSetup setup{*fields, s, ham::Method::rk4_group, st};
    if (doc.contains("method")) {
      try {
        setup.method = ham::parse_method(text(doc, "", "method"));
      } catch (const Error&) {
        fail("method", "must be rk4-group for kind hamiltonian");
      }
    }
    sc.ham.emplace(std::move(setup));
  }

  const std::vector<std::string>& names = monitor_names(sc.kind);
  sc.output.monitors = names;
  if (doc.contains("output")) {
    const json& o = doc["output"];
    reject_unknown(o, "output", {"stride", "monitors"});
    if (o.contains("stride")) {
      if (!o["stride"].is_number_integer() || o["stride"].get<long long>() < 1) {
        fail("output.stride", "must be a positive integer");
      }
      sc.output.stride = o["stride"].get<int>();
    }
    if (o.contains("monitors")) {
      const json& m = o["monitors"];
      if (!m.is_array()) fail("output.monitors", "must be an array of monitor names");
      sc.output.monitors.clear();
      for (const json& name : m) {
        if (!name.is_string() ||
            std::find(names.begin(), names.end(), name.get<std::string>()) == names.end()) {
          fail("output.monitors", "entry " + name.dump() + " is not a monitor of kind " +
                                      to_string(sc.kind));
        }
        sc.output.monitors.push_back(name.get<std::string>());
      }
    }
  }
  if (doc.contains("tolerances")) {
    const json& t = doc["tolerances"];
    if (!t.is_object()) fail("tolerances", "must be an object of monitor name to drift bound");
    for (auto it = t.begin(); it != t.end(); ++it) {
      if (std::find(names.begin(), names.end(), it.key()) == names.end()) {
        fail("tolerances." + it.key(), "is not a monitor of kind " + to_string(sc.kind));
      }
      const double v = number(*it, "tolerances." + it.key());
      if (v < 0.0) fail("tolerances." + it.key(), "must be non-negative");
      sc.tolerances[it.key()] = v;
    }
  }
  return sc;
}

Scenario load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("scenario: cannot read " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("scenario: " + path + " is not valid JSON: " + e.what());
  }
  return parse(doc);
}

}  // namespace spingeom::scenario
