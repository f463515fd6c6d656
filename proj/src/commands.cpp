// Copyright 2026 The qkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qkit/commands.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "qkit/adversary.hpp"
#include "qkit/classify.hpp"
#include "qkit/fixtures.hpp"
#include "qkit/interferometer.hpp"
#include "qkit/io.hpp"
#include "qkit/measures.hpp"

namespace qkit::cli {

using ojson = nlohmann::ordered_json;

namespace {

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

ojson jnum(double x) { return std::isfinite(x) ? ojson(x) : ojson(nullptr); }

ojson matrix_json(const ComplexMatrix& m) {
  ojson rows = ojson::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ojson row = ojson::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ojson vector_json(const ComplexVector& v) {
  ojson out = ojson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

ojson decomposition_json(const Decomposition& d, const std::vector<BasisSpec>& bases) {
  ojson out = ojson::array();
  for (std::size_t e = 0; e < d.weights.size(); ++e) {
    ojson el{{"weight", d.weights[e]}, {"state", vector_json(d.states[e].amplitudes())}};
    if (e < bases.size()) el["basis"] = matrix_json(bases[e].unitary());
    out.push_back(std::move(el));
  }
  return out;
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

io::StateFile load_state(const Options& opt) {
  if (opt.state.empty()) throw Error(ErrorKind::Parse, "--state is required");
  if (opt.state.rfind("fixture:", 0) == 0) {
    const std::string name = opt.state.substr(8);
    auto rho = fixture(name);
    if (!rho) throw Error(ErrorKind::Parse, "unknown fixture '" + name + "'");
    return io::StateFile{name, *rho};
  }
  return io::read_state(opt.state);
}

io::ScenarioFile load_scenario(const Options& opt) {
  if (opt.scenario.empty()) throw Error(ErrorKind::Parse, "--scenario is required");
  return io::read_scenario(opt.scenario);
}

std::string basis_text(const BasisSpec& b) {
  std::ostringstream out;
  for (int j = 0; j < b.dim(); ++j) {
    out << (j ? " " : "") << "|" << j << ">=(";
    for (int i = 0; i < b.dim(); ++i) {
      const Complex z = b.unitary()(i, j);
      out << (i ? ", " : "") << num(z.real());
      if (std::abs(z.imag()) > 1e-12) out << (z.imag() < 0 ? "-" : "+") << num(std::abs(z.imag())) << "i";
    }
    out << ")";
  }
  return out.str();
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "text") return Format::Text;
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw Error(ErrorKind::Parse, "unknown format '" + name + "' (text, csv, json)");
}

std::vector<double> parse_spectrum(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "--generator expects comma-separated numbers, got '" + text + "'");
    }
  }
  return out;
}

Budget parse_budget(const std::string& text, Budget base) {
  if (text.empty()) return base;
  const std::vector<double> v = parse_spectrum(text);
  if (v.empty() || v.size() > 3) {
    throw Error(ErrorKind::Parse, "--budget expects restarts[,max_evals[,ftol]]");
  }
  base.restarts = static_cast<int>(v[0]);
  if (v.size() > 1) base.max_evals = static_cast<int>(v[1]);
  if (v.size() > 2) base.ftol = v[2];
  if (base.restarts <= 0 || base.max_evals <= 0 || !(base.ftol > 0.0)) {
    throw Error(ErrorKind::Parse, "--budget fields must be positive");
  }
  return base;
}

Report cmd_classify(const Options& opt) {
  const io::StateFile sf = load_state(opt);
  const DensityMatrix& rho = sf.state;
  const BasisSpec basis = io::basis_from_name(opt.basis, rho.dims().a);
  const Budget budget = parse_budget(opt.budget, Budget{});

  std::vector<ClassVerdict> verdicts;
  verdicts.push_back(is_incoherent(partial_trace(rho, Subsystem::A), basis));
  verdicts.push_back(is_zero_bd_discord(rho, basis));
  verdicts.push_back(is_zero_discord(rho, budget, opt.seed));
  verdicts.push_back(ppt_verdict(rho));

  Report rep;
  for (const ClassVerdict& v : verdicts) rep.converged = rep.converged && v.converged;

  std::ostringstream out;
  switch (opt.format) {
    case Format::Json: {
      ojson j{{"format_version", io::kFormatVersion}, {"command", "classify"}, {"label", sf.label},
              {"dims", {rho.dims().a, rho.dims().b}}, {"basis", opt.basis}};
      ojson arr = ojson::array();
      for (const ClassVerdict& v : verdicts) {
        ojson e{{"family", to_string(v.family)}, {"member", v.member},
                {"residual", jnum(v.residual)}, {"converged", v.converged},
                {"certified", v.certified}};
        e["witness"] = v.witness ? matrix_json(v.witness->unitary()) : ojson(nullptr);
        arr.push_back(std::move(e));
      }
      j["verdicts"] = std::move(arr);
      out << dump(j);
      break;
    }
    case Format::Csv:
      out << "family,member,residual,converged,certified\n";
      for (const ClassVerdict& v : verdicts) {
        out << to_string(v.family) << "," << (v.member ? "true" : "false") << ","
            << io::format_double(v.residual) << "," << (v.converged ? "true" : "false") << ","
            << (v.certified ? "true" : "false") << "\n";
      }
      break;
    case Format::Text:
      out << "state: " << sf.label << " dims (" << rho.dims().a << ", " << rho.dims().b << ")\n";
      for (const ClassVerdict& v : verdicts) {
        char line[160];
        std::snprintf(line, sizeof line, "%-16s %-5s residual %-14s%s%s", to_string(v.family),
                      v.member ? "true" : "false", num(v.residual).c_str(),
                      v.converged ? "" : " [unconverged]",
                      v.certified ? "" : " [ppt only: not certified]");
        out << line << "\n";
        if (v.witness) out << "  witness " << basis_text(*v.witness) << "\n";
      }
      break;
  }
  rep.body = out.str();
  return rep;
}

Report cmd_measure(const Options& opt) {
  const io::StateFile sf = load_state(opt);
  const DensityMatrix& rho = sf.state;
  const int da = rho.dims().a;
  const BasisSpec basis = io::basis_from_name(opt.basis, da);
  std::vector<double> spectrum = opt.generator.empty() ? default_generator_spectrum(da)
                                                       : parse_spectrum(opt.generator);
  if (static_cast<int>(spectrum.size()) != da) {
    throw Error(ErrorKind::DimensionMismatch, "--generator needs d_A = " + std::to_string(da) + " values");
  }
  const Budget basis_budget = parse_budget(opt.budget, Budget{});
  const Budget roof_budget = parse_budget(opt.budget, convex_roof_budget());

  struct Row {
    const char* name;
    MeasureValue mv;
  };
  std::vector<Row> rows;
  rows.push_back({"coherence", coherence_skew(rho, BasisSpec::computational(da), spectrum)});
  rows.push_back({"bd_discord", bd_discord_skew(rho, basis, generator_in_basis(basis, spectrum))});
  rows.push_back({"discord", discord_skew(rho, basis_budget, opt.seed, spectrum)});
  rows.push_back({"entanglement", entanglement_skew(rho, opt.m, roof_budget, opt.seed, spectrum)});

  Report rep;
  for (const Row& r : rows) rep.converged = rep.converged && r.mv.converged;

  std::ostringstream out;
  switch (opt.format) {
    case Format::Json: {
      ojson spec = ojson::array();
      for (double s : spectrum) spec.push_back(s);
      ojson j{{"format_version", io::kFormatVersion}, {"command", "measure"}, {"label", sf.label},
              {"dims", {rho.dims().a, rho.dims().b}}, {"basis", opt.basis},
              {"generator_spectrum", spec}, {"seed", opt.seed}};
      ojson ms = ojson::object();
      for (const Row& r : rows) {
        ojson e{{"value", jnum(r.mv.value)}, {"converged", r.mv.converged},
                {"iterations", r.mv.iterations}};
        if (r.mv.basis) e["witness_basis"] = matrix_json(r.mv.basis->unitary());
        if (r.mv.decomposition) {
          e["ensemble_size"] = r.mv.ensemble_size;
          e["decomposition"] = decomposition_json(*r.mv.decomposition, r.mv.element_bases);
        }
        ms[r.name] = std::move(e);
      }
      j["measures"] = std::move(ms);
      out << dump(j);
      break;
    }
    case Format::Csv:
      out << "measure,value,converged\n";
      for (const Row& r : rows) {
        out << r.name << "," << io::format_double(r.mv.value) << ","
            << (r.mv.converged ? "true" : "false") << "\n";
      }
      break;
    case Format::Text:
      out << "state: " << sf.label << " dims (" << rho.dims().a << ", " << rho.dims().b << ")\n";
      for (const Row& r : rows) {
        char line[128];
        std::snprintf(line, sizeof line, "%-13s %-16s%s", r.name, num(r.mv.value).c_str(),
                      r.mv.converged ? "" : " [unconverged]");
        out << line << "\n";
        if (r.mv.basis) out << "  witness basis " << basis_text(*r.mv.basis) << "\n";
        if (r.mv.decomposition) {
          out << "  decomposition m = " << r.mv.ensemble_size << ", "
              << r.mv.decomposition->weights.size() << " nonzero elements\n";
        }
      }
      break;
  }
  rep.body = out.str();
  return rep;
}

namespace {

DensityMatrix prepared(const io::ScenarioFile& sc, const DensityMatrix& rho) {
  return sc.channel ? apply_channel(*sc.channel, rho) : rho;
}

std::string distribution_csv(const std::vector<std::vector<double>>& dists) {
  std::ostringstream out;
  out << "phase_index,outcome_index,probability\n";
  for (std::size_t k = 0; k < dists.size(); ++k) {
    for (std::size_t x = 0; x < dists[k].size(); ++x) {
      out << k << "," << x << "," << io::format_double(dists[k][x]) << "\n";
    }
  }
  return out.str();
}

}  // namespace

Report cmd_interfere(const Options& opt) {
  const io::ScenarioFile sc = load_scenario(opt);
  if (sc.states.size() != 1) {
    throw Error(ErrorKind::Parse, opt.scenario + ": interfere takes exactly one state");
  }
  const DensityMatrix rho = prepared(sc, sc.states.front().state);
  const int da = rho.dims().a;
  const BasisSpec basis = sc.basis.value_or(BasisSpec::computational(da));
  const PhaseEnsemble ensemble = sc.ensemble.value_or(PhaseEnsemble::uniform_grid(da, 2));

  std::optional<Measurement> meas = sc.povm;
  double mi = 0.0;
  bool converged = true;
  if (meas) {
    mi = mutual_info(rho, basis, ensemble, *meas);
  } else {
    BestMeasurement best =
        best_measurement(rho, basis, ensemble, sc.budget.value_or(Budget{}), sc.seed, sc.scope);
    mi = best.value;
    converged = best.converged;
    meas = std::move(best.measurement);
  }
  const auto dists = conditional_dists(rho, basis, ensemble, *meas);
  const char* scope = sc.povm ? "fixed" : sc.scope == MeasurementScope::LocalA ? "local_a" : "joint";

  Report rep;
  rep.converged = converged;
  std::ostringstream out;
  switch (opt.format) {
    case Format::Json: {
      ojson el = ojson::array();
      for (const ComplexMatrix& e : meas->elements()) el.push_back(matrix_json(e));
      ojson dj = ojson::array();
      for (const auto& row : dists) dj.push_back(row);
      ojson j{{"format_version", io::kFormatVersion}, {"command", "interfere"},
              {"label", sc.label}, {"state", sc.states.front().label},
              {"measurement_scope", scope}, {"mutual_information_bits", jnum(mi)},
              {"converged", converged}, {"measurement", el}, {"distributions", dj}};
      out << dump(j);
      break;
    }
    case Format::Csv:
      out << distribution_csv(dists);
      break;
    case Format::Text:
      out << "scenario: " << sc.label << "\nstate: " << sc.states.front().label
          << "\nmeasurement: " << scope << " (" << meas->elements().size() << " outcomes)\n"
          << "mutual information: " << num(mi) << " bits" << (converged ? "" : " [unconverged]")
          << "\n\n"
          << distribution_csv(dists);
      break;
  }
  rep.body = out.str();
  return rep;
}

Report cmd_adversary(const Options& opt) {
  const io::ScenarioFile sc = load_scenario(opt);
  if (!sc.adversary) throw Error(ErrorKind::Parse, opt.scenario + ": scenario has no 'adversary'");
  const AdversaryModel& model = *sc.adversary;

  struct Row {
    std::string label;
    GameValue game;
  };
  std::vector<Row> rows;
  for (const io::StateFile& s : sc.states) {
    const DensityMatrix rho = prepared(sc, s.state);
    GameValue g;
    if (model.kind == AdversaryKind::Strong) {
      g = strong_game_skew(rho, model, sc.seed);
    } else if (sc.quantity == "skew") {
      g = weak_game_skew(rho, model.budget, sc.seed);
    } else {
      const int da = rho.dims().a;
      const PhaseEnsemble ensemble = sc.ensemble.value_or(PhaseEnsemble::uniform_grid(da, 2));
      const WeakGameBudget budget{model.budget, sc.budget.value_or(WeakGameBudget{}.inner)};
      g = weak_game_mi(rho, ensemble, budget, sc.seed);
    }
    rows.push_back({s.label, std::move(g)});
  }

  Report rep;
  for (const Row& r : rows) rep.converged = rep.converged && r.game.converged;
  const std::string unit = sc.quantity == "mi" ? "bits" : "skew";

  std::ostringstream out;
  switch (opt.format) {
    case Format::Json: {
      ojson arr = ojson::array();
      for (const Row& r : rows) {
        ojson e{{"state", r.label}, {"value", jnum(r.game.value)}, {"converged", r.game.converged}};
        if (r.game.basis) e["adversary_basis"] = matrix_json(r.game.basis->unitary());
        if (r.game.decomposition) {
          e["adversary_decomposition"] = decomposition_json(*r.game.decomposition, r.game.element_bases);
        }
        if (r.game.prober) {
          ojson el = ojson::array();
          for (const ComplexMatrix& m : r.game.prober->elements()) el.push_back(matrix_json(m));
          e["prober_measurement"] = std::move(el);
        }
        arr.push_back(std::move(e));
      }
      ojson j{{"format_version", io::kFormatVersion}, {"command", "adversary"},
              {"label", sc.label}, {"adversary", to_string(model.kind)},
              {"quantity", sc.quantity}, {"results", arr}};
      out << dump(j);
      break;
    }
    case Format::Csv:
      out << "state,adversary,quantity,value,converged\n";
      for (const Row& r : rows) {
        out << r.label << "," << to_string(model.kind) << "," << sc.quantity << ","
            << io::format_double(r.game.value) << "," << (r.game.converged ? "true" : "false")
            << "\n";
      }
      break;
    case Format::Text:
      out << "scenario: " << sc.label << "\nadversary: " << to_string(model.kind)
          << ", payoff " << sc.quantity << "\n";
      for (const Row& r : rows) {
        out << r.label << ": " << num(r.game.value) << " " << unit
            << (r.game.converged ? "" : " [unconverged]") << "\n";
        if (r.game.basis) out << "  adversary basis " << basis_text(*r.game.basis) << "\n";
        if (r.game.decomposition) {
          out << "  adversary decomposition: " << r.game.decomposition->weights.size()
              << " elements\n";
        }
        if (r.game.prober) {
          out << "  prober measurement: " << r.game.prober->elements().size() << " outcomes\n";
        }
      }
      break;
  }
  rep.body = out.str();
  return rep;
}

Report cmd_table1(const Options& opt) {
  TableBudget budget;
  budget.basis = parse_budget(opt.budget, budget.basis);
  budget.roof = parse_budget(opt.budget, budget.roof);
  const std::vector<TableRow> rows = scenario_table(table_fixtures(), budget, opt.seed);

  const char* names[] = {"coherence", "bd_discord", "discord", "entanglement"};
  auto cells = [](const TableRow& r) {
    return std::array<const TableCell*, 4>{&r.coherence, &r.bd_discord, &r.discord,
                                           &r.entanglement};
  };

  Report rep;
  for (const TableRow& r : rows) {
    for (const TableCell* c : cells(r)) rep.converged = rep.converged && c->converged;
  }

  std::ostringstream out;
  switch (opt.format) {
    case Format::Json: {
      ojson arr = ojson::array();
      for (const TableRow& r : rows) {
        ojson e{{"state", r.label}};
        const auto cs = cells(r);
        for (int k = 0; k < 4; ++k) {
          ojson c{{"value", jnum(cs[k]->value)}, {"converged", cs[k]->converged}};
          if (!cs[k]->error.empty()) c["error"] = cs[k]->error;
          e[names[k]] = std::move(c);
        }
        e["incoherent"] = r.incoherent;
        e["zero_bd_discord"] = r.zero_bd_discord;
        e["zero_discord"] = r.zero_discord;
        e["separable"] = r.separable;
        e["separable_certified"] = r.separable_certified;
        arr.push_back(std::move(e));
      }
      out << dump(ojson{{"format_version", io::kFormatVersion}, {"command", "table1"},
                        {"seed", opt.seed}, {"rows", arr}});
      break;
    }
    case Format::Csv:
      out << "state,coherence,bd_discord,discord,entanglement,incoherent,zero_bd_discord,"
             "zero_discord,separable,unconverged\n";
      for (const TableRow& r : rows) {
        out << r.label;
        std::string unconv;
        const auto cs = cells(r);
        for (int k = 0; k < 4; ++k) {
          out << "," << io::format_double(cs[k]->value);
          if (!cs[k]->converged) unconv += (unconv.empty() ? "" : ";") + std::string(names[k]);
        }
        auto b = [](bool x) { return x ? "true" : "false"; };
        out << "," << b(r.incoherent) << "," << b(r.zero_bd_discord) << "," << b(r.zero_discord)
            << "," << b(r.separable) << "," << unconv << "\n";
      }
      break;
    case Format::Text: {
      char line[256];
      std::snprintf(line, sizeof line, "%-22s %-14s %-14s %-14s %-14s  %s", "state", "coherence",
                    "bd_discord", "discord", "entanglement", "incoh zbd  zd   sep");
      out << line << "\n";
      for (const TableRow& r : rows) {
        std::string vals[4];
        const auto cs = cells(r);
        for (int k = 0; k < 4; ++k) vals[k] = num(cs[k]->value) + (cs[k]->converged ? "" : "*");
        auto b = [](bool x) { return x ? "yes" : "no"; };
        std::snprintf(line, sizeof line, "%-22s %-14s %-14s %-14s %-14s  %-5s %-4s %-4s %s",
                      r.label.c_str(), vals[0].c_str(), vals[1].c_str(), vals[2].c_str(),
                      vals[3].c_str(), b(r.incoherent), b(r.zero_bd_discord), b(r.zero_discord),
                      b(r.separable));
        out << line << "\n";
      }
      out << "* unconverged\n";
      break;
    }
  }
  rep.body = out.str();
  return rep;
}

Report cmd_fixture(const std::string& name) {
  const auto rho = fixture(name);
  if (!rho) throw Error(ErrorKind::Parse, "unknown fixture '" + name + "'");
  return Report{io::format_state(*rho, name), true};
}

}  // namespace qkit::cli
