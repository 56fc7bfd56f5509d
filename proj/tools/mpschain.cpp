#include "mpschain/ed.hpp"
#include "mpschain/genstate.hpp"
#include "mpschain/io.hpp"
#include "mpschain/models.hpp"
#include "mpschain/symmetry.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>

using namespace mpschain;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNoParent = 2;
constexpr int kExitVerifyFailed = 3;

struct ModelArgs {
  std::string which = "II";
  std::string file;
  double g = 1.0;
  double h = 1.0;
  double c = 1.0;
  int sigma = 1;

  void add(CLI::App* app) {
    auto* w = app->add_option("--which", which, "I, II, general or aklt")
                  ->check(CLI::IsMember({"I", "II", "general", "aklt"}));
    auto* f = app->add_option("--model", file, "model JSON file")->check(CLI::ExistingFile);
    w->excludes(f);
    app->add_option("--g", g, "g");
    app->add_option("--h", h, "h (general family)");
    app->add_option("--c", c, "c (general family)");
    app->add_option("--sigma", sigma, "sign of h = sigma g for model II")->check(CLI::IsMember({1, -1}));
  }

  bool fixed_model() const { return file.empty() && (which == "I" || which == "II"); }

  MpsFamily build(double g_value) const {
    if (!file.empty()) return io::family_from_json(io::read_json_file(file));
    if (which == "I") return models::model_I(g_value);
    if (which == "II") return models::model_II_sigma(g_value, sigma);
    if (which == "aklt") return models::aklt();
    return models::general_family(g_value, h, c);
  }
  MpsFamily build() const { return build(g); }
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void require_even(const ModelArgs& m, int n_sites) {
  if (m.fixed_model() && n_sites % 2 != 0)
    throw std::invalid_argument("n-sites must be even for models I and II");
}

std::vector<double> grid(double lo, double hi, int steps) {
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  std::vector<double> out;
  for (int i = 0; i <= steps; ++i) out.push_back(lo + (hi - lo) * i / steps);
  return out;
}

// ---- correlate -----------------------------------------------------------

struct CorrelateArgs {
  ModelArgs model;
  std::vector<double> gs;
  double g_min = 0.0, g_max = 0.0;
  int g_steps = 0;
  std::string channel = "sz2";
  int r_min = 1, r_max = 1;
  std::string mode = "thermo";
  int n_sites = 8;
  std::string format = "csv";
  std::string out;
};

bool two_point(const std::string& ch) { return ch == "zz" || ch == "xx" || ch == "yy" || ch == "z2z2"; }

std::string channel_site_op(const std::string& ch) {
  if (ch == "zz") return "sz";
  if (ch == "xx") return "sx";
  if (ch == "yy") return "sy";
  return "sz2";
}

int run_correlate(const CorrelateArgs& a) {
  if (a.mode == "ring") require_even(a.model, a.n_sites);
  std::vector<double> gs = a.gs;
  if (a.g_steps > 0) gs = grid(a.g_min, a.g_max, a.g_steps);
  if (gs.empty()) gs.push_back(a.model.g);

  io::CsvTable t;
  t.header = {"g", "r", "channel", "mode", "N", "value", "flag"};
  json rows = json::array();
  for (double g : gs) {
    const MpsFamily m = a.model.build(g);
    const bool pair = two_point(a.channel);
    const int r_lo = pair ? a.r_min : 0, r_hi = pair ? a.r_max : 0;
    for (int r = r_lo; r <= r_hi; ++r) {
      double value = 0.0;
      std::string flag;
      if (a.mode == "ring") {
        value = pair ? ring_two_point(m, observable(channel_site_op(a.channel)), observable(channel_site_op(a.channel)), r,
                                      a.n_sites)
                     : ring_one_point(m, observable(a.channel), a.n_sites);
      } else {
        const Limit l = pair ? thermo_two_point(m, observable(channel_site_op(a.channel)),
                                                observable(channel_site_op(a.channel)), r)
                             : thermo_one_point(m, observable(a.channel));
        value = l.value;
        if (!l.converged) flag = "oscillatory";
      }
      const std::string n = a.mode == "ring" ? std::to_string(a.n_sites) : "inf";
      t.rows.push_back({io::format_double(g), std::to_string(r), a.channel, a.mode, n, io::format_double(value), flag});
      rows.push_back({{"g", g}, {"r", r}, {"channel", a.channel}, {"mode", a.mode}, {"N", n}, {"value", value}, {"flag", flag}});
    }
  }
  if (a.format == "json") {
    emit(a.out, rows.dump(2) + "\n");
  } else {
    std::ostringstream os;
    io::write_csv(os, t);
    emit(a.out, os.str());
  }
  return 0;
}

// ---- sweep ---------------------------------------------------------------

struct SweepArgs {
  double g_min = 0.1, g_max = 3.0;
  int steps = 29;
  std::string source = "closed";
  std::string out;
};

int run_sweep(const SweepArgs& a) {
  io::CsvTable t;
  t.header = {"g", "quantity", "value"};
  for (double g : grid(a.g_min, a.g_max, a.steps)) {
    std::vector<std::pair<std::string, double>> q;
    if (a.source == "closed") {
      const auto cf = models::closed_form_correlators_I(g);
      q = {{"sz2", cf.sz2}, {"sx2", cf.sx2}, {"G_par", cf.g_par}, {"G_perp", cf.g_perp}, {"xi_par", cf.xi_par},
           {"xi_perp", cf.xi_perp}};
    } else {
      const MpsFamily m = models::model_I(g);
      auto xi = [&](const char* o) {
        const double x = thermo_two_point(m, observable(o), observable(o), 2).value;
        const double y = thermo_two_point(m, observable(o), observable(o), 3).value;
        return 1.0 / std::log(x / y);
      };
      q = {{"sz2", thermo_one_point(m, observable("sz2")).value},
           {"sx2", thermo_one_point(m, observable("sx2")).value},
           {"G_par", thermo_two_point(m, observable("sz"), observable("sz"), 1).value},
           {"G_perp", thermo_two_point(m, observable("sx"), observable("sx"), 1).value},
           {"xi_par", xi("sz")},
           {"xi_perp", xi("sx")}};
    }
    for (const auto& [name, v] : q) t.rows.push_back({io::format_double(g), name, io::format_double(v)});
  }
  std::ostringstream os;
  io::write_csv(os, t);
  emit(a.out, os.str());
  return 0;
}

// ---- parent --------------------------------------------------------------

struct ParentArgs {
  ModelArgs model;
  int k = 2;
  double tol = linalg::kDefaultNullTol;
  std::string out;
};

int run_parent(const ParentArgs& a) {
  const MpsFamily m = a.model.build();
  const NullSpaceBasis basis = parent::ground_null_space(m, a.k, a.tol);
  if (basis.empty()) {
    std::cerr << basis.note << '\n';
    return kExitNoParent;
  }
  const LocalHamiltonian h = parent::local_hamiltonian(basis);
  json j = io::to_json(h);
  j["tol"] = a.tol;
  std::cerr << "kernel dimension " << basis.size() << '\n';
  emit(a.out, j.dump(2) + "\n");
  return 0;
}

// ---- ed ------------------------------------------------------------------

struct EdArgs {
  std::string hamiltonian = "II";
  std::string file;
  double g = 1.0;
  int n_sites = 4;
  double kernel_tol = 1e-8;
  std::string out;
};

int run_ed(const EdArgs& a) {
  LocalHamiltonian h;
  if (!a.file.empty()) h = io::hamiltonian_from_json(io::read_json_file(a.file));
  else if (a.hamiltonian == "I") h = models::model_I_hamiltonian(a.g);
  else if (a.hamiltonian == "II") h = models::model_II_hamiltonian(1);
  else if (a.hamiltonian == "h1") h = models::limit_hamiltonian_h1();
  else h = models::limit_hamiltonian_h2();
  const auto rep = ed::report(ed::ComplexChain(h, a.n_sites), a.kernel_tol);
  emit(a.out, io::to_json(rep).dump(2) + "\n");
  return 0;
}

// ---- genstate ------------------------------------------------------------

struct GenstateArgs {
  int n_sites = 4;
  int zeros = 2;
  std::string obs = "zz";
  std::vector<int> rs;
  bool norm = false;
  std::string out;
};

int run_genstate(const GenstateArgs& a) {
  using namespace genstate;
  if (a.norm) {
    emit(a.out, psi_n_norm(a.n_sites, a.zeros).str() + "\n");
    return 0;
  }
  const Channel c = parse_channel(a.obs);
  std::vector<CorrRow> rows;
  const bool pair = c == Channel::zz || c == Channel::xx;
  std::vector<int> rs = a.rs;
  if (rs.empty()) rs.push_back(2);
  if (!pair) rs = {c == Channel::sz2sz2 ? rs.front() : 0};
  for (int r : rs) rows.push_back({a.n_sites, a.zeros, r, c, corr(c, a.n_sites, a.zeros, std::max(r, 2))});
  std::ostringstream os;
  write_csv(os, rows);
  emit(a.out, os.str());
  return 0;
}

// ---- verify --------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "all";
  int n_sites = 6;
  double tol = 1e-10;
  std::string out;
};

class Report {
 public:
  void check(const std::string& name, double value, double threshold, bool pass) {
    checks_.push_back({{"name", name}, {"value", value}, {"threshold", threshold}, {"pass", pass}});
    all_ &= pass;
  }
  void at_most(const std::string& name, double value, double threshold) { check(name, value, threshold, value <= threshold); }
  bool ok() const { return all_; }
  json to_json() const { return checks_; }

 private:
  json checks_ = json::array();
  bool all_ = true;
};

void suite_frustration(Report& r, const VerifyArgs& a) {
  for (double g : {0.3, 0.7, 1.0, 1.5}) {
    r.at_most("model I g=" + io::format_double(g),
              parent::verify_zero_energy(models::model_I(g), models::model_I_hamiltonian(g), a.n_sites), a.tol);
    r.at_most("model II g=" + io::format_double(g),
              parent::verify_zero_energy(models::model_II(g), models::model_II_hamiltonian(1), a.n_sites), a.tol);
  }
}

void suite_formulas(Report& r, const VerifyArgs& a) {
  for (double g : {0.3, 0.7, 1.0, 1.5, 2.0}) {
    const auto cf = models::closed_form_correlators_I(g);
    const auto m = models::model_I(g);
    const std::string tag = " g=" + io::format_double(g);
    r.at_most("sz2" + tag, std::abs(thermo_one_point(m, observable("sz2")).value - cf.sz2), 1e-8);
    r.at_most("sx2" + tag, std::abs(thermo_one_point(m, observable("sx2")).value - cf.sx2), 1e-8);
    r.at_most("G_par" + tag, std::abs(thermo_two_point(m, observable("sz"), observable("sz"), 1).value - cf.g_par), 1e-8);
    r.at_most("G_perp" + tag, std::abs(thermo_two_point(m, observable("sx"), observable("sx"), 1).value - cf.g_perp), 1e-8);
  }
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.2, 2.0);
  double worst = 0.0;
  for (int s = 0; s < 20; ++s) {
    const double g = u(rng), h = u(rng), c = u(rng);
    const double ref = models::det_closed_form(g, h, c);
    worst = std::max(worst, std::abs(models::det_word_matrix(g, h, c) - ref) / std::abs(ref));
  }
  r.at_most("word matrix determinant, relative", worst, 1e-9);
  const int n = std::min(a.n_sites, 6);
  const auto k = ed::kernel_dimension(ed::RealChain(models::limit_hamiltonian_h1(), n));
  r.check("h1 kernel N=" + std::to_string(n), k.lower, models::adjacency_ground_count(n).convert_to<double>(),
          k.exact() && models::adjacency_ground_count(n) == k.lower);
  const auto dec = models::spin_form_decompose(models::model_II_hamiltonian(1));
  const auto cmp = models::compare_spin_form(dec, models::model_II_reference_spin_form());
  r.at_most("model II spin form residual", dec.residual, a.tol);
  r.at_most("model II spin form scale - 2", std::abs(cmp.scale - 2.0), a.tol);
}

void suite_genstate(Report& r, const VerifyArgs& a) {
  using namespace genstate;
  const int n_sites = a.n_sites;
  if (n_sites % 2 != 0) throw std::invalid_argument("genstate suite needs even n-sites");
  int mismatches = 0, total = 0;
  for (int n = 0; n <= n_sites; n += 2) {
    const PsiN p = psi_n_expand(n_sites, n);
    mismatches += psi_n_norm(n_sites, n) != direct_norm(p);
    mismatches += corr_sz2(n_sites, n) != direct_corr(p, Channel::sz2, 2);
    mismatches += corr_sperp2(n_sites, n) != direct_corr(p, Channel::sperp2, 2);
    total += 3;
    for (int rr = 2; rr <= n_sites - 1; ++rr)
      for (Channel c : {Channel::sz2sz2, Channel::zz, Channel::xx}) {
        mismatches += corr(c, n_sites, n, rr) != direct_corr(p, c, rr);
        ++total;
      }
  }
  r.check("formula vs expansion mismatches (" + std::to_string(total) + " comparisons)", mismatches, 0, mismatches == 0);
  double worst = 0.0;
  for (double g : {1.0, 2.0, 3.0, -1.0, -2.0}) {
    const Amplitudes amp = amplitudes(models::model_II(g), n_sites);
    VectorC sum = VectorC::Zero(amp.values.size());
    for (int n = 0; n <= n_sites; n += 2) sum += std::pow(g, n) * psi_n_expand(n_sites, n).to_vector();
    worst = std::max(worst, (amp.values - sum).cwiseAbs().maxCoeff());
  }
  r.check("generating identity max deviation", worst, 0.0, worst == 0.0);
}

void suite_symmetry(Report& r, const VerifyArgs&) {
  MatrixC bond_sz = MatrixC::Zero(3, 3);
  bond_sz(0, 0) = 1.0;
  bond_sz(2, 2) = -1.0;
  r.at_most("z generator model I", symmetry::check_generator_condition(models::model_I(1.0), spin::sz(), bond_sz), 1e-12);
  r.at_most("z generator model II", symmetry::check_generator_condition(models::model_II(1.0), spin::sz(), bond_sz), 1e-12);
  const double c = 1.8;
  const auto fam = models::general_family(0.9, 1.4, c);
  const auto par = symmetry::find_intertwiner(fam, symmetry::parity_target(fam));
  const auto flip = symmetry::find_intertwiner(fam, symmetry::spin_flip_target(fam));
  MatrixC pi = MatrixC::Zero(3, 3), omega = MatrixC::Zero(3, 3);
  pi(0, 2) = pi(1, 1) = pi(2, 0) = 1.0;
  omega(0, 2) = 1.0;
  omega(1, 1) = c;
  omega(2, 0) = c * c;
  r.at_most("parity intertwiner", par.found ? (par.matrix - pi).norm() : 1.0, 1e-9);
  r.at_most("spin flip intertwiner", flip.found ? (flip.matrix - omega).norm() : 1.0, 1e-9);
  r.at_most("spherical tensor AKLT", symmetry::spherical_tensor_residual(models::aklt(), symmetry::spin_rep(1)), 1e-12);
  const double broken = symmetry::spherical_tensor_residual(models::model_I(1.0), symmetry::spin_rep(2));
  r.check("spherical tensor model I g=1 (must exceed)", broken, 0.1, broken > 0.1);
}

void suite_sigma(Report& r, const VerifyArgs& a) {
  const auto eq = models::sigma_equivalence_check(a.n_sites);
  r.at_most("sigma spectra", eq.max_deviation, a.tol);
  r.at_most("local conjugation", eq.local_residual, 1e-12);
  r.at_most("global conjugation", eq.global_residual, 1e-12);
}

int run_verify(const VerifyArgs& a) {
  const std::vector<std::pair<std::string, void (*)(Report&, const VerifyArgs&)>> suites{
      {"frustration", suite_frustration}, {"formulas", suite_formulas}, {"genstate", suite_genstate},
      {"symmetry", suite_symmetry},       {"appendixA", suite_sigma}};
  json out = {{"n_sites", a.n_sites}, {"tol", a.tol}, {"suites", json::object()}};
  bool ok = true;
  for (const auto& [name, fn] : suites) {
    if (a.suite != "all" && a.suite != name) continue;
    Report r;
    fn(r, a);
    ok &= r.ok();
    out["suites"][name] = {{"pass", r.ok()}, {"checks", r.to_json()}};
  }
  out["pass"] = ok;
  emit(a.out, out.dump(2) + "\n");
  return ok ? 0 : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matrix product states on spin-1 rings: models, correlators, parent Hamiltonians"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");

  ModelArgs model_args;
  std::string model_out;
  auto* model_cmd = app.add_subcommand("model", "write an MPS family as JSON");
  model_args.add(model_cmd);
  model_cmd->add_option("--out", model_out, "output file (default stdout)");

  CorrelateArgs corr_args;
  auto* corr_cmd = app.add_subcommand("correlate", "one- and two-point functions");
  corr_args.model.add(corr_cmd);
  corr_cmd->add_option("--g-list", corr_args.gs, "explicit g values");
  corr_cmd->add_option("--g-min", corr_args.g_min);
  corr_cmd->add_option("--g-max", corr_args.g_max);
  corr_cmd->add_option("--g-steps", corr_args.g_steps, "number of intervals in [g-min, g-max]");
  corr_cmd->add_option("--channel", corr_args.channel, "id, sz, sx, sy, sz2, sx2, sy2, zz, xx, yy, z2z2")
      ->check(CLI::IsMember({"id", "sz", "sx", "sy", "sz2", "sx2", "sy2", "zz", "xx", "yy", "z2z2"}));
  corr_cmd->add_option("--r-min", corr_args.r_min)->check(CLI::PositiveNumber);
  corr_cmd->add_option("--r-max", corr_args.r_max)->check(CLI::PositiveNumber);
  corr_cmd->add_option("--mode", corr_args.mode)->check(CLI::IsMember({"ring", "thermo"}));
  corr_cmd->add_option("--n-sites", corr_args.n_sites, "ring size for --mode ring");
  corr_cmd->add_option("--format", corr_args.format)->check(CLI::IsMember({"csv", "json"}));
  corr_cmd->add_option("--out", corr_args.out);

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "model I correlator sweep over g as CSV");
  sweep_cmd->add_option("--g-min", sweep_args.g_min);
  sweep_cmd->add_option("--g-max", sweep_args.g_max);
  sweep_cmd->add_option("--steps", sweep_args.steps);
  sweep_cmd->add_option("--source", sweep_args.source)->check(CLI::IsMember({"closed", "transfer"}));
  sweep_cmd->add_option("--out", sweep_args.out);

  ParentArgs parent_args;
  auto* parent_cmd = app.add_subcommand("parent", "derive the k-site parent Hamiltonian");
  parent_args.model.add(parent_cmd);
  parent_cmd->add_option("--k", parent_args.k)->check(CLI::Range(1, 8));
  parent_cmd->add_option("--tol", parent_args.tol)->check(CLI::NonNegativeNumber);
  parent_cmd->add_option("--out", parent_args.out);

  EdArgs ed_args;
  auto* ed_cmd = app.add_subcommand("ed", "exact diagonalization report");
  auto* ed_which = ed_cmd->add_option("--hamiltonian", ed_args.hamiltonian, "I, II, h1 or h2")
                       ->check(CLI::IsMember({"I", "II", "h1", "h2"}));
  ed_cmd->add_option("--file", ed_args.file, "local Hamiltonian JSON")->check(CLI::ExistingFile)->excludes(ed_which);
  ed_cmd->add_option("--g", ed_args.g);
  ed_cmd->add_option("--n-sites", ed_args.n_sites);
  ed_cmd->add_option("--kernel-tol", ed_args.kernel_tol)->check(CLI::PositiveNumber);
  ed_cmd->add_option("--out", ed_args.out);

  GenstateArgs gen_args;
  auto* gen_cmd = app.add_subcommand("genstate", "exact norms and correlators of the degenerate model II states");
  gen_cmd->add_option("--n-sites", gen_args.n_sites)->required();
  gen_cmd->add_option("--zeros", gen_args.zeros)->required();
  gen_cmd->add_option("--obs", gen_args.obs, "sz2, sperp2, sz2sz2, zz, xx");
  gen_cmd->add_option("--r", gen_args.rs, "site of the second operator (first is site 1)");
  gen_cmd->add_flag("--norm", gen_args.norm, "print the exact norm instead");
  gen_cmd->add_option("--out", gen_args.out);

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite, JSON report");
  verify_cmd->add_option("--suite", verify_args.suite)
      ->check(CLI::IsMember({"frustration", "formulas", "genstate", "symmetry", "appendixA", "all"}));
  verify_cmd->add_option("--n-sites", verify_args.n_sites);
  verify_cmd->add_option("--tol", verify_args.tol)->check(CLI::PositiveNumber);
  verify_cmd->add_option("--out", verify_args.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*model_cmd) {
      emit(model_out, io::to_json(model_args.build()).dump(2) + "\n");
      return 0;
    }
    if (*corr_cmd) return run_correlate(corr_args);
    if (*sweep_cmd) return run_sweep(sweep_args);
    if (*parent_cmd) return run_parent(parent_args);
    if (*ed_cmd) return run_ed(ed_args);
    if (*gen_cmd) return run_genstate(gen_args);
    if (*verify_cmd) return run_verify(verify_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
