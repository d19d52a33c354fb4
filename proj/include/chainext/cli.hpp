// cli.hpp
//
// Command pipelines behind the chainext executable. Each command reads its
// input, fills an ordered result document plus a Report, and never prints;
// rendering is separate so that output is byte-for-byte deterministic.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 bad input.

#pragma once

#include "chainext/brst.hpp"
#include "chainext/bv.hpp"
#include "chainext/complexes.hpp"
#include "chainext/fuzz.hpp"
#include "chainext/io.hpp"
#include "chainext/lie.hpp"
#include "chainext/report.hpp"
#include "chainext/shlie.hpp"

#include <json.hpp>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chainext::cli {

using Json = nlohmann::ordered_json;
using superalg::Monomial;
using superalg::SuperPoly;

struct RunConfig {
  std::string command;
  std::string input;
  std::optional<std::size_t> trunc;  // default 4
  std::optional<unsigned> cap;       // default 6, unless the input file sets one
  std::size_t order = 3;
  std::string alpha1;                // path or h2:K
  bool cross_check = false;
  std::uint64_t seed = 1;
  std::size_t count = 100;
  bool structured = false;

  [[nodiscard]] std::size_t trunc_or(std::size_t file_value) const { return trunc.value_or(file_value); }
};

/// Bad input of any kind; maps to exit code 2.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Output {
  std::string command;
  std::string input;
  Json data = Json::object();
  Report report;

  [[nodiscard]] int exit_code() const { return report.ok() ? 0 : 1; }
};

// ---------------------------------------------------------------------------
// formatting helpers

inline std::string cochain_str(const lie::Cochain& c, const std::vector<std::string>& names, const char* open = "(",
                               const char* close = ")") {
  std::vector<std::string> parts;
  for (std::size_t t = 0; t < c.tuples().size(); ++t) {
    if (chainext::is_zero(c.stored(t))) continue;
    std::string args;
    for (std::size_t i = 0; i < c.tuples()[t].size(); ++i) args += (i ? "," : "") + names[c.tuples()[t][i]];
    parts.push_back(open + args + close + " = " + lie::format_vec(c.stored(t), names));
  }
  if (parts.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "; " : "") + parts[i];
  return out;
}

inline Json cochain_json(const lie::Cochain& c, const std::vector<std::string>& names) {
  Json out = Json::array();
  for (std::size_t t = 0; t < c.tuples().size(); ++t) {
    if (chainext::is_zero(c.stored(t))) continue;
    Json args = Json::array();
    for (auto i : c.tuples()[t]) args.push_back(names[i]);
    Json val = Json::object();
    for (std::size_t k = 0; k < c.dim(); ++k)
      if (!c.stored(t)[k].is_zero()) val[names[k]] = c.stored(t)[k].str();
    out.push_back(Json{{"args", args}, {"value", val}});
  }
  return out;
}

/// "c t^k name" terms of an sh-Lie vector, in index order.
inline std::string svec_str(const shlie::ShLieStructure& s, const shlie::SVec& v) {
  if (v.empty()) return "0";
  std::string out;
  for (const auto& [idx, c] : v) {
    const auto d = s.decode(idx);
    std::string term = d.k == 0 ? "" : (d.k == 1 ? "t " : "t^" + std::to_string(d.k) + " ");
    term += s.algebra.names[d.a] + (d.starred ? "*" : "");
    const Rat a = c.sign() < 0 ? -c : c;
    const std::string coef = a.is_one() ? "" : a.pretty() + " ";
    if (out.empty())
      out = (c.sign() < 0 ? "-" : "") + coef + term;
    else
      out += (c.sign() < 0 ? " - " : " + ") + coef + term;
  }
  return out;
}

inline std::vector<std::string> matrix_rows(const RatMatrix& m) {
  std::vector<std::string> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::string line;
    for (std::size_t c = 0; c < m.cols(); ++c) line += (c ? " " : "") + m(r, c).str();
    rows.push_back(line);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// lie

inline std::optional<lie::Cochain> select_alpha1(const RunConfig& cfg, const io::LieFile& f, const lie::H2Result& h) {
  if (cfg.alpha1.rfind("h2:", 0) == 0) {
    std::size_t k = 0;
    try {
      k = std::stoul(cfg.alpha1.substr(3));
    } catch (const std::exception&) {
      throw InputError("--alpha1 h2:K needs a positive integer K");
    }
    if (k < 1 || k > h.representatives.size())
      throw InputError("--alpha1 " + cfg.alpha1 + ": H2 has dimension " + std::to_string(h.dimension));
    return h.representatives[k - 1];
  }
  if (!cfg.alpha1.empty()) return io::parse_cochain(io::read_file(cfg.alpha1), f.algebra.dim, cfg.alpha1);
  return f.alpha1;
}

inline io::LieFile load_lie(const RunConfig& cfg) {
  io::LieFile f = io::parse_lie(io::read_file(cfg.input), cfg.input);
  if (!lie::jacobi_check(f.algebra))
    throw InputError("bracket fails Jacobi: J = " + cochain_str(lie::nr_compose(f.algebra.bracket, f.algebra.bracket), f.algebra.names));
  return f;
}

inline Output cmd_lie(const RunConfig& cfg) {
  Output out;
  out.command = "lie";
  out.input = cfg.input;
  const io::LieFile f = load_lie(cfg);
  const auto& a = f.algebra;
  out.data["algebra"] = f.name;
  out.data["dim"] = a.dim;
  out.report.add("Jacobi identity", true);
  const lie::H2Result h = lie::h2(a);
  out.data["H2 dim"] = h.dimension;
  Json reps = Json::array();
  for (const auto& r : h.representatives) reps.push_back(cochain_str(r, a.names, "[", "]"));
  out.data["H2 representatives"] = reps;
  for (std::size_t i = 0; i < h.representatives.size(); ++i)
    out.report.add("representative " + std::to_string(i + 1) + " is a cocycle",
                   lie::ce_differential(a, h.representatives[i]).is_zero());

  const auto alpha1 = select_alpha1(cfg, f, h);
  if (!alpha1) return out;
  if (!lie::ce_differential(a, *alpha1).is_zero())
    throw InputError("alpha1 is not a cocycle: d alpha1 = " + cochain_str(lie::ce_differential(a, *alpha1), a.names));
  out.data["alpha1"] = cochain_str(*alpha1, a.names, "[", "]");
  const lie::Cochain ob = lie::bracket2(*alpha1, *alpha1);
  out.data["[alpha1,alpha1]"] = cochain_str(ob, a.names);
  out.report.add("[alpha1,alpha1] = 2 alpha1 alpha1", ob == Rat(2) * lie::nr_compose(*alpha1, *alpha1));

  std::vector<lie::Cochain> alphas{*alpha1};
  Json steps = Json::array();
  for (std::size_t n = 2; n <= cfg.order; ++n) {
    const lie::Cochain rho = lie::obstruction(alphas, n);
    auto next = lie::extend_deformation(a, alphas);
    if (!next) {
      steps.push_back("order " + std::to_string(n) + ": obstructed, rho = " + cochain_str(rho, a.names));
      out.data["extension halts at order"] = n;
      break;
    }
    alphas.push_back(*next);
    steps.push_back("order " + std::to_string(n) + ": alpha" + std::to_string(n) + " = " +
                    cochain_str(*next, a.names, "[", "]"));
    out.report.add("order " + std::to_string(n) + " deformation equation",
                   lie::deformation_residual(a, alphas, n).is_zero());
  }
  out.data["extension"] = steps;
  return out;
}

// ---------------------------------------------------------------------------
// shlie

inline Output cmd_shlie(const RunConfig& cfg) {
  Output out;
  out.command = "shlie";
  out.input = cfg.input;
  const io::LieFile f = load_lie(cfg);
  const auto& a = f.algebra;
  const lie::H2Result h = lie::h2(a);
  std::optional<lie::Cochain> alpha1 = select_alpha1(cfg, f, h);
  std::string source = "supplied";
  if (!alpha1) {
    if (h.dimension > 0) {
      alpha1 = h.representatives.front();
      source = "first H2 representative";
    } else {
      alpha1 = lie::Cochain(a.dim, 2);
      source = "zero (H2 = 0)";
    }
  }
  const std::size_t n = cfg.trunc_or(4);
  shlie::ShLieStructure t2, full;
  try {
    t2 = shlie::build_shlie(a, *alpha1, n, shlie::Variant::FromT2);
    full = shlie::build_shlie(a, *alpha1, n, shlie::Variant::Full);
  } catch (const shlie::InvalidInput& e) {
    throw InputError(e.what());
  }
  out.data["algebra"] = f.name;
  out.data["truncation"] = n;
  out.data["alpha1"] = cochain_str(*alpha1, a.names, "[", "]") + " (" + source + ")";
  out.data["[alpha1,alpha1]"] = cochain_str(lie::bracket2(*alpha1, *alpha1), a.names);
  out.data["dim X (t^2 variant)"] = t2.dim();
  out.data["dim X (t^0 variant)"] = full.dim();

  Json l2 = Json::array(), l3 = Json::array();
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = i + 1; j < a.dim; ++j) {
      const auto v = t2.l2(t2.x0(i, 0), t2.x0(j, 0));
      if (!v.empty()) l2.push_back("l2(" + a.names[i] + "," + a.names[j] + ") = " + svec_str(t2, v));
    }
  for (const auto& t : lie::increasing_tuples(a.dim, 3)) {
    const auto v = t2.l3(t2.x0(t[0], 0), t2.x0(t[1], 0), t2.x0(t[2], 0));
    if (!v.empty())
      l3.push_back("l3(" + a.names[t[0]] + "," + a.names[t[1]] + "," + a.names[t[2]] + ") = " + svec_str(t2, v));
  }
  out.data["l2 on generators"] = l2;
  out.data["l3 on generators"] = l3;

  out.report.merge(shlie::verify_shlie(t2), "t^2 variant: ");
  out.report.merge(shlie::verify_shlie(full), "t^0 variant: ");
  out.report.merge(shlie::verify_variant_restriction(full, t2));
  if (cfg.cross_check) out.report.merge(shlie::cross_check_engine(t2), "cross-check: ");
  return out;
}

// ---------------------------------------------------------------------------
// brst

inline Output cmd_brst(const RunConfig& cfg) {
  Output out;
  out.command = "brst";
  out.input = cfg.input;
  const io::BrstFile f = io::parse_brst(io::read_file(cfg.input), cfg.input);
  const auto& s = f.system;
  const unsigned cap = cfg.cap ? *cfg.cap : f.cap.value_or(6);
  std::optional<brst::BRSTExtension> e;
  try {
    e.emplace(brst::build_brst(s, cap));
  } catch (const brst::BrstError& err) {
    throw InputError(err.what());
  }
  out.data["system"] = f.name;
  out.data["constraints"] = s.n();
  out.data["cap"] = cap;
  out.data["constant structure"] = brst::constant_structure(s);
  auto table = [&](const char* label, auto&& fn) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < s.gens->size(); ++i) {
      const SuperPoly g = s.gen(i);
      const SuperPoly v = fn(g);
      if (!v.is_zero()) rows.push_back(std::string(label) + "(" + (*s.gens)[i].name + ") = " + v.str());
    }
    return rows;
  };
  out.data["delta on generators"] = table("delta", [&](const SuperPoly& g) { return e->l1(g); });
  out.data["l2 on generators"] = table("l2", [&](const SuperPoly& g) { return e->l2(g); });
  out.data["l3 on generators"] = table("l3", [&](const SuperPoly& g) { return e->l3(g); });
  out.report.merge(brst::validate_system(s), "system: ");
  out.report.merge(brst::verify_brst_resolution(s, cap), "resolution: ");
  out.report.merge(brst::check_ideal_conditions(s, cap), "ideal: ");
  out.report.merge(brst::verify_brst(*e, cap));
  if (cfg.cross_check) out.report.merge(brst::cross_check_engine(s, *e, cap), "cross-check: ");
  return out;
}

// ---------------------------------------------------------------------------
// bv

inline Output cmd_bv(const RunConfig& cfg) {
  Output out;
  out.command = "bv";
  out.input = cfg.input;
  io::BvFile f;
  f = io::parse_bv(io::read_file(cfg.input), cfg.cap, cfg.input);
  const std::size_t trunc = cfg.trunc ? *cfg.trunc : f.trunc.value_or(4);
  std::optional<bv::DeformationMaps> t;
  try {
    t.emplace(bv::deformation_maps(f.problem, trunc));
  } catch (const bv::BVError& err) {
    throw InputError(err.what());
  }
  const auto& m = f.problem.model;
  const std::size_t n = f.problem.order();
  out.data["model"] = f.name;
  out.data["order"] = n;
  out.data["cap"] = m.cap;
  out.data["truncation"] = trunc;
  Json s = Json::array();
  for (std::size_t i = 0; i <= n; ++i) {
    const bool found = std::find(f.auto_orders.begin(), f.auto_orders.end(), i) != f.auto_orders.end();
    s.push_back("S" + std::to_string(i) + " = " + f.problem.S[i].str() + (found ? " (cocycle search)" : ""));
  }
  out.data["S"] = s;
  out.data["R" + std::to_string(n + 1)] = bv::obstruction_R(f.problem, n + 1).str();
  Json l2 = Json::array(), l2s = Json::array(), l3 = Json::array();
  for (std::size_t i = 0; i < m.gens->size(); ++i) {
    const Monomial g = SuperPoly::generator(m.gens, i).terms().begin()->first;
    const std::string name = (*m.gens)[i].name;
    const bv::Elem a = t->unit(false, g, 0), as = t->unit(true, g, n + 1);
    if (auto v = t->l2(a); !v.is_zero()) l2.push_back("l2(" + name + ") = " + bv::elem_str(*t, v));
    if (auto v = t->l2(as); !v.is_zero()) l2s.push_back("l2(" + name + "* t^" + std::to_string(n + 1) + ") = " + bv::elem_str(*t, v));
    if (auto v = t->l3(a); !v.is_zero()) l3.push_back("l3(" + name + ") = " + bv::elem_str(*t, v));
  }
  out.data["l2 on generators"] = l2;
  out.data["l2 on starred generators"] = l2s;
  out.data["l3 on generators"] = l3;
  out.report.merge(bv::validate_problem(f.problem));
  out.report.merge(bv::verify_deformation_maps(*t));
  if (cfg.cross_check) out.report.merge(bv::cross_check_engine(*t), "cross-check: ");
  return out;
}

// ---------------------------------------------------------------------------
// extend

inline Output cmd_extend(const RunConfig& cfg) {
  Output out;
  out.command = "extend";
  out.input = cfg.input;
  const io::ComplexFile f = io::parse_complex(io::read_file(cfg.input), cfg.input);
  Report pre;
  try {
    f.h.check_shapes();
    pre = complexes::verify_homotopy(f.h);
    pre.merge(complexes::check_l2_conditions(f.h, f.l2_0, f.d_f));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  out.data["complex"] = f.name;
  Json dims = Json::array();
  for (auto d : f.h.space.dims) dims.push_back(d);
  out.data["degrees"] = dims;
  out.data["dim F"] = f.h.f_dim;
  out.report.merge(pre);
  if (!pre.ok()) return out;
  const complexes::ChainExtension e = complexes::chain_extend(f.h, f.l2_0);
  for (int p = 1; p <= f.h.space.top(); ++p)
    if (!e.l2.at(p).is_zero()) out.data["l2 degree " + std::to_string(p)] = matrix_rows(e.l2.at(p));
  for (int p = 0; p <= f.h.space.top(); ++p)
    if (!e.l3.at(p).is_zero()) out.data["l3 degree " + std::to_string(p)] = matrix_rows(e.l3.at(p));
  out.report.merge(complexes::verify_nilpotent(e));
  out.report.merge(complexes::verify_vanishing(e));
  const std::size_t hx = complexes::total_homology_dims(e);
  out.data["dim H(X, l)"] = hx;
  if (f.d_f) {
    const std::size_t hf = complexes::homology_dim(*f.d_f);
    out.data["dim H(F, D_F)"] = hf;
    out.report.add("H(X,l) = H(F,D_F)", hx == hf, std::to_string(hx) + " vs " + std::to_string(hf));
  }
  return out;
}

// ---------------------------------------------------------------------------
// fuzz

inline Output cmd_fuzz(const RunConfig& cfg) {
  Output out;
  out.command = "fuzz";
  out.input = "";
  const complexes::FuzzSummary sum = complexes::run_fuzz(cfg.seed, cfg.count);
  out.data["seed"] = cfg.seed;
  out.data["instances"] = sum.generated;
  out.data["rejected"] = sum.rejected;
  out.data["passed"] = sum.passed;
  out.data["summary"] = std::to_string(sum.passed) + "/" + std::to_string(sum.generated) + " pass";
  if (!sum.failures.empty()) out.data["failures"] = sum.failures;
  out.report.add("every instance satisfies all relations", sum.passed == sum.generated,
                 std::to_string(sum.passed) + "/" + std::to_string(sum.generated));
  return out;
}

inline Output run(const RunConfig& cfg) {
  try {
    if (cfg.command == "lie") return cmd_lie(cfg);
    if (cfg.command == "shlie") return cmd_shlie(cfg);
    if (cfg.command == "brst") return cmd_brst(cfg);
    if (cfg.command == "bv") return cmd_bv(cfg);
    if (cfg.command == "extend") return cmd_extend(cfg);
    if (cfg.command == "fuzz") return cmd_fuzz(cfg);
  } catch (const InputError&) {
    throw;
  } catch (const io::ParseError& e) {
    throw InputError(e.what());
  } catch (const bv::EscapingMonomial& e) {
    throw InputError(e.what());
  } catch (const brst::EscapingMonomial& e) {
    throw InputError(e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  throw InputError("unknown command '" + cfg.command + "'");
}

// ---------------------------------------------------------------------------
// rendering

inline std::string render_text(const Output& o) {
  std::string out = "chainext " + o.command + (o.input.empty() ? "" : " " + o.input) + "\n";
  for (const auto& [key, value] : o.data.items()) {
    if (value.is_array()) {
      out += key + ":" + (value.empty() ? " none" : "") + "\n";
      for (const auto& v : value) out += "  " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    } else {
      out += key + ": " + (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
    }
  }
  out += "checks:\n" + o.report.summary();
  out += std::string("result: ") + (o.report.ok() ? "PASS" : "FAIL") + "\n";
  return out;
}

inline std::string render_structured(const Output& o) {
  Json doc = Json::object();
  doc["command"] = o.command;
  if (!o.input.empty()) doc["input"] = o.input;
  doc["data"] = o.data;
  Json checks = Json::array();
  for (const auto& c : o.report.checks()) {
    Json j{{"name", c.name}, {"passed", c.passed}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    checks.push_back(j);
  }
  doc["checks"] = checks;
  doc["ok"] = o.report.ok();
  return doc.dump(2) + "\n";
}

}  // namespace chainext::cli
