// Command-line front end: dimension solves, constructions, scans, and
// Monte-Carlo experiments. Everything prints machine-readable JSON or CSV.
#include <CLI11.hpp>
#include <json.hpp>

#include "cfdim/cantor.hpp"
#include "cfdim/cf_core.hpp"
#include "cfdim/classify.hpp"
#include "cfdim/pressure.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

using json = nlohmann::ordered_json;
using namespace cfdim;

namespace {

json rational_json(const Rational& r) {
  return {{"num", boost::multiprecision::numerator(r).str()},
          {"den", boost::multiprecision::denominator(r).str()}};
}

json result_json(const DimensionResult& r) {
  return {{"problem", {{"B", r.problem.B}, {"M", r.problem.M}, {"m", r.problem.m}}},
          {"value", r.value},
          {"bracket_width", r.bracket_width},
          {"method", r.method},
          {"residual", r.residual},
          {"boundary_low", r.boundary_low},
          {"boundary_high", r.boundary_high}};
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

// Growth-function descriptor: geometric:B | power:EXP[:SCALE] | doubly:B[:C]
GrowthFunction parse_phi(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.empty()) throw std::invalid_argument("empty --phi descriptor");
  const std::string& kind = parts[0];
  auto arg = [&](std::size_t i, double dflt) {
    return parts.size() > i ? std::stod(parts[i]) : dflt;
  };
  if (kind == "geometric") return GrowthFunction::geometric(arg(1, 2.0));
  if (kind == "power") return GrowthFunction::power(arg(1, 1.0), arg(2, 1.0));
  if (kind == "doubly") return GrowthFunction::doubly(arg(1, 2.0), arg(2, 1.0));
  throw std::invalid_argument("unknown --phi kind '" + kind + "' (geometric|power|doubly)");
}

struct SpecFlags {
  double B = 4.0;
  double s = 0.5;
  std::int64_t M = 1;
  int L = 1;
  std::string n_seq;        // comma list, e.g. "2,6,14"
  int auto_n1 = 0;          // alternative: generated sequence
  int auto_count = 0;
  double gamma = 4.0;
  double epsilon0 = 0.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--B", B, "growth base B > 1");
    cmd->add_option("--s", s, "target exponent s in (0,1)");
    cmd->add_option("--M", M, "interior alphabet bound");
    cmd->add_option("--L", L, "block length");
    cmd->add_option("--n-seq", n_seq, "comma-separated peak positions");
    cmd->add_option("--auto-n1", auto_n1, "generate n_seq starting at this n_1");
    cmd->add_option("--auto-count", auto_count, "number of generated peaks");
    cmd->add_option("--gamma", gamma, "growth factor for the generated n_seq");
    cmd->add_option("--epsilon0", epsilon0, "sparsity margin (0 = computed default)");
  }

  CantorSpec build() const {
    CantorSpec sp;
    sp.B = B;
    sp.s = s;
    sp.M = M;
    sp.L = L;
    sp.epsilon0 = epsilon0;
    if (!n_seq.empty()) {
      std::stringstream ss(n_seq);
      std::string item;
      while (std::getline(ss, item, ',')) sp.n_seq.push_back(std::stoi(item));
    } else if (auto_n1 > 0 && auto_count > 0) {
      sp.n_seq = make_n_seq(L, auto_n1, auto_count, gamma);
    }
    return validate_spec(sp);
  }
};

std::string word_text(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(w[i]);
  }
  return out;
}

const char* case_name(CaseTag t) {
  switch (t) {
    case CaseTag::interior: return "interior";
    case CaseTag::pre_peak: return "pre-peak";
    case CaseTag::peak: return "peak";
  }
  return "?";
}

int run(int argc, char** argv) {
  CLI::App app{"dimension numbers of continued-fraction limit sets"};
  app.require_subcommand(1);

  // ---- solve ----
  auto* solve = app.add_subcommand("solve", "solve the pressure equation for one B");
  double B = 2.0, tol = 1e-10;
  std::int64_t M = 50;
  int m = 2, degree = 32;
  bool tail = false, squared = false;
  solve->add_option("--B", B, "growth base (must exceed 1)")->required();
  solve->add_option("--M", M, "alphabet bound");
  solve->add_option("--m", m, "product order");
  solve->add_option("--tol", tol, "bisection tolerance");
  solve->add_option("--degree", degree, "collocation degree");
  solve->add_flag("--tail", tail, "integral tail correction for digits > M");
  solve->add_flag("--squared", squared, "use the dedicated -s^2 log B potential path");

  // ---- curve ----
  auto* curve = app.add_subcommand("curve", "sweep a grid of B values, CSV output");
  std::string grid_text, grid_file, out_file;
  curve->add_option("--grid", grid_text, "comma-separated B values");
  curve->add_option("--grid-file", grid_file, "file with one B per line");
  curve->add_option("--out", out_file, "output path (default stdout)");
  curve->add_option("--M", M, "alphabet bound");
  curve->add_option("--m", m, "product order");
  curve->add_option("--tol", tol, "bisection tolerance");
  curve->add_option("--degree", degree, "collocation degree");
  curve->add_flag("--tail", tail, "integral tail correction");

  // ---- partition ----
  auto* partition = app.add_subcommand("partition", "depth-n weighted cylinder sum");
  int pn = 8;
  double ps = 0.5;
  std::string method = "auto";
  partition->add_option("--n", pn, "depth")->required();
  partition->add_option("--B", B, "growth base");
  partition->add_option("--M", M, "alphabet bound");
  partition->add_option("--m", m, "product order");
  partition->add_option("--s", ps, "candidate exponent");
  partition->add_option("--method", method, "auto|enumeration|prefix");

  // ---- construct ----
  auto* construct = app.add_subcommand("construct", "dump one level of the construction as CSV");
  SpecFlags cf;
  cf.attach(construct);
  int level = 4;
  construct->add_option("--level", level, "word length to enumerate");
  construct->add_option("--out", out_file, "output path (default stdout)");

  // ---- holder ----
  auto* holder = app.add_subcommand("holder", "minimum local Holder exponent at a level");
  SpecFlags hf;
  hf.attach(holder);
  double slack = 0.05;
  holder->add_option("--level", level, "word length to scan");
  holder->add_option("--slack", slack, "tolerance subtracted from the bound");

  // ---- sample ----
  auto* sample = app.add_subcommand("sample", "draw measure-distributed points");
  SpecFlags sf;
  sf.attach(sample);
  int depth = 8, count = 1;
  std::uint64_t seed = 0;
  sample->add_option("--depth", depth, "word depth");
  sample->add_option("--seed", seed, "RNG seed");
  sample->add_option("--count", count, "number of points");

  // ---- boxdim ----
  auto* boxdim = app.add_subcommand("boxdim", "box-counting slope over a 2^-j ladder");
  SpecFlags bf;
  bf.attach(boxdim);
  int j_lo = 8, j_hi = 24, step = 2;
  std::uint64_t budget = 10'000'000;
  boxdim->add_option("--j-lo", j_lo, "smallest ladder exponent");
  boxdim->add_option("--j-hi", j_hi, "largest ladder exponent");
  boxdim->add_option("--step", step, "ladder stride");
  boxdim->add_option("--budget", budget, "node budget");

  // ---- classify ----
  auto* classify = app.add_subcommand("classify", "growth exponents and dimension prediction");
  std::string phi_text = "geometric:2";
  int N = 1000;
  classify->add_option("--phi", phi_text, "growth function (geometric:B|power:E[:S]|doubly:B[:C])");
  classify->add_option("--N", N, "truncation window end");
  classify->add_option("--M", M, "alphabet bound for the solver");
  classify->add_option("--tol", tol, "solver tolerance");

  // ---- montecarlo ----
  auto* mc = app.add_subcommand("montecarlo", "zero-one-law event fractions");
  std::uint64_t S = 100'000;
  std::string law = "bb";
  mc->add_option("--phi", phi_text, "growth function descriptor");
  mc->add_option("--S", S, "sample count");
  mc->add_option("--N", N, "truncation");
  mc->add_option("--seed", seed, "RNG seed");
  mc->add_option("--law", law, "bb (Borel-Bernstein) | kw (Kleinbock-Wadleigh)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the usage message
    return 1;
  }

  if (const char* env = std::getenv("CFDIM_THREADS")) {
#ifdef _OPENMP
    const int n_threads = std::atoi(env);
    if (n_threads > 0) omp_set_num_threads(n_threads);
#else
    (void)env;
#endif
  }

  TransferOptions topts;
  topts.degree = degree;
  topts.tail = tail;

  if (*solve) {
    if (B <= 1.0) {
      std::cerr << "error: B must exceed 1\n";
      return 1;
    }
    auto r = squared ? solve_dimension_squared(B, M, tol, topts)
                     : solve_dimension(B, M, m, tol, topts);
    std::cout << result_json(r).dump(2) << "\n";
    return 0;
  }

  if (*curve) {
    std::vector<double> grid = parse_grid(grid_text);
    if (!grid_file.empty()) {
      std::ifstream in(grid_file);
      double v;
      while (in >> v) grid.push_back(v);
    }
    if (grid.empty()) {
      std::cerr << "error: empty grid\n";
      return 1;
    }
    std::sort(grid.begin(), grid.end());
    std::vector<double> dedup;
    for (double g : grid) {
      if (!dedup.empty() && dedup.back() == g) {
        std::cerr << "warning: duplicate grid entry " << g << " (last wins)\n";
        continue;
      }
      dedup.push_back(g);
    }
    for (double g : dedup) {
      if (g <= 1.0) {
        std::cerr << "error: B must exceed 1 (got " << g << ")\n";
        return 1;
      }
    }
    auto pts = dimension_curve(dedup, M, m, tol, topts);
    std::ostringstream csv;
    csv << "B,m,M,s_star,residual\n";
    char buf[128];
    for (const auto& p : pts) {
      if (!p.ok) {
        std::cerr << "error: solve failed at B=" << p.B << ": " << p.error << "\n";
        return 2;
      }
      std::snprintf(buf, sizeof(buf), "%.17g,%d,%lld,%.17g,%.17g\n", p.B, p.m,
                    static_cast<long long>(p.M), p.s_star, p.residual);
      csv << buf;
    }
    if (out_file.empty()) {
      std::cout << csv.str();
    } else {
      std::ofstream out(out_file, std::ios::binary);
      out << csv.str();
    }
    return 0;
  }

  if (*partition) {
    PressureProblem prob;
    prob.M = M;
    prob.B = B;
    prob.m = m;
    prob.s = ps;
    PartitionOptions popts;
    if (method == "enumeration") popts.method = PartitionMethod::enumeration;
    else if (method == "prefix") popts.method = PartitionMethod::prefix;
    else if (method != "auto") {
      std::cerr << "error: unknown --method '" << method << "'\n";
      return 1;
    }
    auto r = partition_sum(pn, prob, popts);
    json out = {{"n", r.n},
                {"log_value", r.value.log()},
                {"value", r.value.to_double()},
                {"method", r.method == PartitionMethod::enumeration ? "enumeration" : "prefix"}};
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  auto dump_csv = [&](const std::string& text) {
    if (out_file.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(out_file, std::ios::binary);
      out << text;
    }
  };

  if (*construct) {
    auto sp = cf.build();
    std::ostringstream csv;
    csv << "word,length_num,length_den,mu_log,case,gap_lower\n";
    char buf[64];
    enumerate_words(sp, level, budget, [&](const Word& w, const ConvergentPair&) {
      auto fl = fundamental_length(w, sp);
      auto mu = measure(w, sp);
      auto g = gap(w, sp);
      std::snprintf(buf, sizeof(buf), "%.17g", mu.mu.log());
      csv << word_text(w) << ',' << boost::multiprecision::numerator(fl.length).str() << ','
          << boost::multiprecision::denominator(fl.length).str() << ',' << buf << ','
          << case_name(fl.tag) << ',';
      std::snprintf(buf, sizeof(buf), "%.17g", rational_to_double(g.G));
      csv << buf << '\n';
    });
    dump_csv(csv.str());
    return 0;
  }

  if (*holder) {
    auto sp = hf.build();
    auto h = holder_scan(sp, level, slack);
    json out = {{"level", level},
                {"min_exponent", h.min_exponent},
                {"bound", h.bound},
                {"ok", h.ok},
                {"words", h.words}};
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (*sample) {
    auto sp = sf.build();
    json arr = json::array();
    for (int i = 0; i < count; ++i) {
      auto pt = sample_point(sp, depth, seed + static_cast<std::uint64_t>(i));
      json digits = json::array();
      for (std::size_t k = 0; k < pt.word.size(); ++k) digits.push_back(pt.word[k]);
      arr.push_back({{"digits", digits}, {"x", pt.x}});
    }
    std::cout << arr.dump(2) << "\n";
    return 0;
  }

  if (*boxdim) {
    auto sp = bf.build();
    auto est = box_dimension_estimate(sp, j_lo, j_hi, step, budget);
    json out = {{"slope", est.slope},
                {"band", est.band},
                {"deltas", est.deltas},
                {"counts", est.counts}};
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (*classify) {
    auto phi = parse_phi(phi_text);
    auto g = growth_exponents(phi, N);
    json out = {{"phi", phi.describe()},
                {"exponents",
                 {{"logB", g.logB},
                  {"logb", g.logb},
                  {"B_infinite", g.B_infinite},
                  {"B_one", g.B_one},
                  {"b_infinite", g.b_infinite},
                  {"window", {g.window_lo, g.window_hi}},
                  {"liminf_caveat", g.liminf_caveat}}}};
    if (g.B_one) {
      out["prediction_error"] = "B = 1 regime: the solver refuses B <= 1";
    } else {
      auto p = dimension_predict(phi, M, tol, N, topts);
      out["prediction"] = {{"value", p.value}, {"regime", p.regime}, {"used_solver", p.used_solver}};
      if (p.used_solver) out["prediction"]["solver"] = result_json(p.solver);
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (*mc) {
    auto phi = parse_phi(phi_text);
    LawTag tag;
    if (law == "bb") tag = LawTag::borel_bernstein;
    else if (law == "kw") tag = LawTag::kleinbock_wadleigh;
    else {
      std::cerr << "error: unknown --law '" << law << "'\n";
      return 1;
    }
    auto rep = monte_carlo_law(phi, S, N, seed, tag);
    json out = {{"law", law == "bb" ? "borel-bernstein" : "kleinbock-wadleigh"},
                {"phi", rep.phi},
                {"S", rep.samples},
                {"N", rep.N},
                {"fraction", rep.fraction},
                {"series_diagnosis", rep.series_diagnosis}};
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const SpecError& e) {
    std::cerr << "spec error:\n";
    for (const auto& v : e.violations()) std::cerr << "  - " << v << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    // Numerical non-convergence and other runtime failures.
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  }
}
