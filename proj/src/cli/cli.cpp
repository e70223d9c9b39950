#include "diskdft/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>

#include "diskdft/frame.hpp"
#include "diskdft/oracle.hpp"
#include "diskdft/simd/kernels.hpp"
#include "diskdft/undersampling.hpp"
#include "io.hpp"

namespace diskdft::cli {
namespace {

constexpr double kDefaultSeriesTol = 1e-16;

struct JobConfig {
  std::optional<int> twice_s;
  std::optional<double> r;
  std::optional<int> n;
  std::optional<int> band_limit;
  std::string mode = "bandlimited";
  std::string input;
  std::string output;
  std::string query;
  std::string coeff_output;
  std::string format = "csv";
  std::optional<int> n_max;
  std::optional<std::uint64_t> seed;
  std::string sweep_r;
  std::string sweep_n;
  std::string m_list;
  int r_count = 201;
  std::optional<double> epsilon;
  std::optional<double> epsilon_m;
  std::string bound_variant = "printed";
};

struct Output {
  std::string path;
  std::string content;
};

template <class T>
T need(const std::optional<T>& v, const char* flag) {
  if (!v) throw InvalidArgument(std::string(flag) + " is required");
  return *v;
}

std::string need(const std::string& v, const char* flag) {
  if (v.empty()) throw InvalidArgument(std::string(flag) + " is required");
  return v;
}

Format format_of(const JobConfig& c) { return c.format == "json" ? Format::json : Format::csv; }

bool undersampled(const JobConfig& c) { return c.mode == "undersampled"; }

SamplingGrid grid_of(const JobConfig& c) { return SamplingGrid(need(c.r, "--r"), need(c.n, "--n")); }

int to_int(double v, const char* what) {
  if (v != std::floor(v) || std::abs(v) > 1e9) throw InvalidArgument(std::string(what) + " must be an integer");
  return static_cast<int>(v);
}

CoeffSignal load_signal(const JobConfig& c) {
  const auto sf = read_signal(need(c.input, "--input"));
  if (c.twice_s && *c.twice_s != sf.twice_s) {
    throw InvalidArgument("--twice-s " + std::to_string(*c.twice_s) + " does not match signal file twice_s " +
                          std::to_string(sf.twice_s));
  }
  return CoeffSignal(Sympling(sf.twice_s), sf.coefficients);
}

std::vector<cplx> load_samples(const JobConfig& c, int n) {
  auto s = read_samples(need(c.input, "--input"));
  if (static_cast<int>(s.size()) != n) {
    throw InvalidArgument("samples file has " + std::to_string(s.size()) + " rows, --n is " + std::to_string(n));
  }
  return s;
}

void warn_conditioning(double cond, std::ostream& err) {
  if (cond > kIllConditioned) {
    err << "# warning: condition number " << format_number(cond) << " exceeds " << format_number(kIllConditioned)
        << "\n";
  }
}

Table sample_table(const std::vector<cplx>& v, const char* index_name = "k") {
  Table t{{index_name, "re", "im"}, {}};
  for (std::size_t k = 0; k < v.size(); ++k) t.rows.push_back({static_cast<long>(k), v[k].real(), v[k].imag()});
  return t;
}

std::vector<Output> cmd_grid(const JobConfig& c) {
  const auto g = grid_of(c);
  return {{c.output, render(sample_table(g.points()), format_of(c))}};
}

std::vector<Output> cmd_synthesize(const JobConfig& c) {
  const auto g = grid_of(c);
  std::optional<CoeffSignal> psi;
  std::vector<Output> outs;
  if (!c.input.empty()) {
    psi = load_signal(c);
  } else {
    if (!c.seed) throw InvalidArgument("--input or --seed is required");
    oracle::SignalSpec spec;
    spec.band_limit = need(c.band_limit, "--band-limit");
    psi = oracle::random_signal(Sympling(need(c.twice_s, "--twice-s")), spec, *c.seed);
  }
  if (!c.coeff_output.empty()) {
    const auto a = psi->coefficients();
    outs.push_back({c.coeff_output, render_signal(psi->sympling().twice(), {a.begin(), a.end()})});
  }
  outs.insert(outs.begin(), Output{c.output, render(sample_table(sample_signal(*psi, g)), format_of(c))});
  return outs;
}

std::vector<DiskPoint> query_points(const JobConfig& c) {
  std::vector<DiskPoint> pts;
  if (!c.query.empty()) {
    for (const auto& z : read_points(c.query)) pts.emplace_back(z);
  } else if (c.seed) {
    oracle::Rng rng(*c.seed);
    for (int i = 0; i < 10; ++i) pts.emplace_back(oracle::random_disk_point(rng));
  } else {
    throw InvalidArgument("--query or --seed is required");
  }
  return pts;
}

std::vector<Output> cmd_reconstruct(const JobConfig& c, std::ostream& err) {
  const Sympling s(need(c.twice_s, "--twice-s"));
  const auto g = grid_of(c);
  const auto samples = load_samples(c, g.size());
  const auto pts = query_points(c);
  if (c.n_max && c.coeff_output.empty()) throw InvalidArgument("--n-max in reconstruct needs --coeff-output");
  if (c.n_max && !undersampled(c)) throw InvalidArgument("--n-max in reconstruct needs --mode undersampled");

  std::vector<cplx> values;
  std::vector<Output> outs;
  if (undersampled(c)) {
    const CirculantKernel kernel(s, g);
    warn_conditioning(kernel.condition_number(), err);
    values = PartialReconstruction(kernel, samples).evaluate(pts);
    if (c.n_max) {
      outs.push_back({c.coeff_output, render(sample_table(dft_hyperboloid(kernel, samples, *c.n_max), "n"),
                                             format_of(c))});
    }
  } else {
    const FrameMatrix fm(s, g, need(c.band_limit, "--band-limit"));
    warn_conditioning(fm.condition_number(), err);
    values = BandlimitedInterpolant(fm, samples).evaluate(pts);
  }
  Table t{{"j", "z_re", "z_im", "re", "im"}, {}};
  for (std::size_t j = 0; j < pts.size(); ++j) {
    t.rows.push_back({static_cast<long>(j), pts[j].re(), pts[j].im(), values[j].real(), values[j].imag()});
  }
  outs.insert(outs.begin(), Output{c.output, render(t, format_of(c))});
  return outs;
}

std::vector<Output> cmd_dft(const JobConfig& c, std::ostream& err) {
  const Sympling s(need(c.twice_s, "--twice-s"));
  const auto g = grid_of(c);
  const auto samples = load_samples(c, g.size());
  if (!undersampled(c)) {
    const FrameMatrix fm(s, g, need(c.band_limit, "--band-limit"));
    warn_conditioning(fm.condition_number(), err);
    return {{c.output, render(sample_table(fourier_coeffs_from_samples(fm, samples), "n"), format_of(c))}};
  }
  const CirculantKernel kernel(s, g);
  warn_conditioning(kernel.condition_number(), err);
  const int n_max = c.n_max.value_or(g.size() - 1);
  const auto a_hat = dft_hyperboloid(kernel, samples, n_max);
  const auto& sp = kernel.spectrum();
  Table t{{"n", "re", "im", "rescaled_re", "rescaled_im"}, {}};
  for (int n = 0; n <= n_max; ++n) {
    // (lambda_hat_{n mod N} / lambda_n) a_hat_n
    const int j = n % g.size();
    const double f = n < g.size() ? 1.0 + kernel.tail_ratios()[static_cast<std::size_t>(n)]
                                  : std::exp(kernel.log_eigenvalue(j) - sp.log_lambda(n));
    const cplx a = a_hat[static_cast<std::size_t>(n)];
    const cplx b = f * a;
    t.rows.push_back({static_cast<long>(n), a.real(), a.imag(), b.real(), b.imag()});
  }
  return {{c.output, render(t, format_of(c))}};
}

std::vector<double> list_or_single(const std::string& list, const std::optional<double>& single, const char* flag) {
  if (!list.empty()) return parse_list(list);
  if (single) return {*single};
  throw InvalidArgument(std::string(flag) + " is required");
}

std::vector<Output> cmd_error_analysis(const JobConfig& c, std::ostream& err) {
  const auto psi = load_signal(c);
  const auto rs = list_or_single(c.sweep_r, c.r, "--sweep-r or --r");
  std::optional<double> n_single;
  if (c.n) n_single = *c.n;
  const auto ns = list_or_single(c.sweep_n, n_single, "--sweep-n or --n");
  std::vector<SamplingGrid> grids;
  for (double r : rs)
    for (double n : ns) grids.emplace_back(r, to_int(n, "--sweep-n"));

  const double norm2 = psi.norm2();
  if (norm2 == 0.0) throw InvalidArgument("signal is identically zero");
  Table t{{"r", "N", "M", "epsilon_m", "exact", "bound", "leading", "satisfied"}, {}};
  for (const auto& g : grids) {
    const int m = c.band_limit.value_or(g.size() - 1);
    const auto profile = quasi_band_profile(psi, m);
    const CirculantKernel kernel(psi.sympling(), g);
    warn_conditioning(kernel.condition_number(), err);
    const double e = error_exact(kernel, psi);
    const double exact = e * e / norm2;
    std::vector<Cell> row{g.radius(), static_cast<long>(g.size()), static_cast<long>(m), profile.epsilon_m, exact};
    if (m == g.size() - 1) {
      const double bound = error_bound(kernel, profile);
      row.push_back(bound);
      row.push_back(error_bound_leading(kernel, profile));
      row.push_back(static_cast<long>(exact <= bound ? 1 : 0));
    } else {
      row.insert(row.end(), {std::monostate{}, std::monostate{}, std::monostate{}});
    }
    t.rows.push_back(std::move(row));
  }
  return {{c.output, render(t, format_of(c))}};
}

std::vector<Output> cmd_critical_radius(const JobConfig& c) {
  const Sympling s(need(c.twice_s, "--twice-s"));
  std::vector<int> ms;
  if (!c.m_list.empty()) {
    for (double v : parse_list(c.m_list)) ms.push_back(to_int(v, "--m-list"));
  } else {
    ms.push_back(need(c.band_limit, "--m-list or --band-limit"));
  }
  for (int m : ms)
    if (m < 1) throw InvalidArgument("critical radius needs M >= 1");
  std::vector<double> rs;
  if (!c.sweep_r.empty()) {
    rs = parse_list(c.sweep_r);
  } else {
    if (c.r_count < 1) throw InvalidArgument("--r-count must be >= 1");
    for (int i = 0; i < c.r_count; ++i) rs.push_back(static_cast<double>(i) / c.r_count);
  }
  for (double r : rs)
    if (!(r >= 0.0 && r < 1.0)) throw InvalidArgument("radii must lie in [0,1)");
  Table t{{"M", "r", "pm", "r_c"}, {}};
  for (int m : ms) {
    const double rc = critical_radius(s, m);
    for (double r : rs) t.rows.push_back({static_cast<long>(m), r, pm_curve(s, m, r), rc});
  }
  return {{c.output, render(t, format_of(c))}};
}

std::vector<Output> cmd_radius_estimate(const JobConfig& c) {
  const Sympling s(need(c.twice_s, "--twice-s"));
  const int n = need(c.n, "--n");
  const double eps = need(c.epsilon, "--epsilon");
  const double eps_m = need(c.epsilon_m, "--epsilon-m");
  const auto variant = c.bound_variant == "derived" ? RadiusBoundVariant::derived : RadiusBoundVariant::printed;
  const auto est = max_radius_estimate(s, n, eps, eps_m, variant);
  Table t{{"N", "epsilon", "epsilon_m", "variant", "radius", "clamped"}, {}};
  t.rows.push_back({static_cast<long>(n), eps, eps_m, c.bound_variant, est.radius, static_cast<long>(est.clamped)});
  return {{c.output, render(t, format_of(c))}};
}

std::string json_array(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_number(v[i]);
  return out + "]";
}

// Dense references for fixture regeneration; independent of the fast paths.
std::vector<Output> cmd_oracle_fixtures(const JobConfig& c) {
  const Sympling s(c.twice_s.value_or(2));
  const SamplingGrid g(c.r.value_or(0.5), c.n.value_or(2));
  const int cols = c.n_max.value_or(2 * g.size()) + 1;
  const auto gram = oracle::dense_gram(s, g);
  Eigen::SelfAdjointEigenSolver<oracle::LMatrix> es(gram, Eigen::EigenvaluesOnly);
  std::vector<double> ev;
  for (Eigen::Index i = es.eigenvalues().size(); i-- > 0;) ev.push_back(static_cast<double>(es.eigenvalues()(i)));
  const auto inv = oracle::dense_gram_inverse(s, g);
  const auto proj = oracle::dense_projector(s, g, cols);
  std::string out = "{\"twice_s\": " + std::to_string(s.twice()) + ", \"r\": " + format_number(g.radius()) +
                    ", \"n\": " + std::to_string(g.size()) + ",\n";
  out += " \"gram_eigenvalues_desc\": " + json_array(ev) + ",\n";
  out += " \"gram_inverse_real\": [";
  for (int i = 0; i < inv.rows; ++i) {
    std::vector<double> row;
    for (int j = 0; j < inv.cols; ++j) row.push_back(inv.entries(i, j).real());
    out += (i ? ", " : "") + json_array(row);
  }
  out += "],\n \"projector_real\": [";
  for (int i = 0; i < proj.rows; ++i) {
    std::vector<double> row;
    for (int j = 0; j < proj.cols; ++j) row.push_back(proj.entries(i, j).real());
    out += (i ? ",\n  " : "\n  ") + json_array(row);
  }
  out += "],\n \"dual_sinc_at_origin\": [";
  for (int k = 0; k < g.size(); ++k) {
    const cplx v = oracle::dense_dual_sinc(s, g, k, {0.0, 0.0});
    out += (k ? ", " : "") + json_array({v.real(), v.imag()});
  }
  out += "],\n \"quadrature_norm_m0\": " + format_number(oracle::quadrature_norm(s, 0)) + "}\n";
  return {{c.output, out}};
}

void configure_tolerance() {
  const char* env = std::getenv("DISKDFT_SERIES_TOL");
  if (env == nullptr || *env == '\0') {
    set_series_tolerance(kDefaultSeriesTol);
    return;
  }
  double v = 0.0;
  try {
    v = parse_number(env);
  } catch (const InvalidArgument&) {
    throw InvalidArgument(std::string("DISKDFT_SERIES_TOL is not a number: ") + env);
  }
  set_series_tolerance(v);
}

void add_common(CLI::App* sub, JobConfig& c, bool needs_s = true) {
  if (needs_s) sub->add_option("--twice-s", c.twice_s, "Twice the sympling, integer >= 2");
  sub->add_option("--r", c.r, "Ring radius in (0,1)");
  sub->add_option("--n", c.n, "Number of samples N >= 1");
  sub->add_option("--output", c.output, "Output file (default: stdout)");
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

void add_mode(CLI::App* sub, JobConfig& c) {
  sub->add_option("--mode", c.mode, "Reconstruction path")->check(CLI::IsMember({"bandlimited", "undersampled"}));
  sub->add_option("--band-limit", c.band_limit, "Band limit M (bandlimited mode)");
  sub->add_option("--input", c.input, "Samples file with columns k,re,im");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  JobConfig c;
  CLI::App app{"Sampling and DFT on the unit disk from N samples on a ring", "diskdft"};
  app.require_subcommand(1);

  auto* grid = app.add_subcommand("grid", "Ring sampling points z_k = r e^{2 pi i k/N}");
  add_common(grid, c, false);

  auto* synth = app.add_subcommand("synthesize", "Sample a coefficient signal on the ring");
  add_common(synth, c);
  synth->add_option("--input", c.input, "Signal JSON {twice_s, coefficients}");
  synth->add_option("--seed", c.seed, "Generate a random bandlimited signal instead of --input");
  synth->add_option("--band-limit", c.band_limit, "Band limit of the generated signal");
  synth->add_option("--coeff-output", c.coeff_output, "Write the synthesized signal JSON here");

  auto* recon = app.add_subcommand("reconstruct", "Evaluate the reconstruction at query points");
  add_common(recon, c);
  add_mode(recon, c);
  recon->add_option("--query", c.query, "Query points file with columns re,im");
  recon->add_option("--seed", c.seed, "Use 10 random query points from this seed");
  recon->add_option("--n-max", c.n_max, "Also write a_hat_0..a_hat_{n-max} (undersampled)");
  recon->add_option("--coeff-output", c.coeff_output, "File for the a_hat table");

  auto* dft = app.add_subcommand("dft", "Fourier coefficients from samples");
  add_common(dft, c);
  add_mode(dft, c);
  dft->add_option("--n-max", c.n_max, "Highest a_hat index (undersampled, default N-1)");

  auto* err_an = app.add_subcommand("error-analysis", "Exact error and bounds over a sweep of (r, N)");
  add_common(err_an, c);
  err_an->add_option("--input", c.input, "Signal JSON {twice_s, coefficients}");
  err_an->add_option("--band-limit", c.band_limit, "Band limit M (default N-1 per row)");
  err_an->add_option("--sweep-r", c.sweep_r, "Comma-separated radii");
  err_an->add_option("--sweep-n", c.sweep_n, "Comma-separated sample counts");

  auto* crit = app.add_subcommand("critical-radius", "P_M^s(r) curves and the critical radius");
  add_common(crit, c);
  crit->add_option("--band-limit", c.band_limit, "Single band limit M");
  crit->add_option("--m-list", c.m_list, "Comma-separated band limits");
  crit->add_option("--sweep-r", c.sweep_r, "Comma-separated radii in [0,1)");
  crit->add_option("--r-count", c.r_count, "Uniform radii i/count, i < count (default 201)");

  auto* est = app.add_subcommand("radius-estimate", "Largest ring radius for a target normalized error");
  add_common(est, c);
  est->add_option("--epsilon", c.epsilon, "Target normalized error");
  est->add_option("--epsilon-m", c.epsilon_m, "Tail energy ratio epsilon_M");
  est->add_option("--bound-variant", c.bound_variant, "Radius formula")
      ->check(CLI::IsMember({"printed", "derived"}));

  auto* fixtures = app.add_subcommand("oracle-fixtures", "Dense reference values");
  fixtures->group("");
  add_common(fixtures, c);
  fixtures->add_option("--n-max", c.n_max, "Projector size minus one");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    configure_tolerance();
    char tol[32];
    *std::to_chars(tol, tol + sizeof tol - 1, series_tolerance()).ptr = '\0';
    err << "# diskdft series_tolerance=" << tol
        << " simd=" << simd::active_kernels().name << "\n";
    std::vector<Output> outs;
    if (grid->parsed()) outs = cmd_grid(c);
    else if (synth->parsed()) outs = cmd_synthesize(c);
    else if (recon->parsed()) outs = cmd_reconstruct(c, err);
    else if (dft->parsed()) outs = cmd_dft(c, err);
    else if (err_an->parsed()) outs = cmd_error_analysis(c, err);
    else if (crit->parsed()) outs = cmd_critical_radius(c);
    else if (est->parsed()) outs = cmd_radius_estimate(c);
    else outs = cmd_oracle_fixtures(c);
    for (const auto& o : outs) write_output(o.path, o.content, out);
    return kExitOk;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace diskdft::cli
