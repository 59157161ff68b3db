// Command line front end: every run is fully determined by its flags plus
// the seed; numeric output is printed with 17 significant digits so repeated
// runs are byte-identical on one platform.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "hamf/distribution.hpp"
#include "hamf/residue_symbol.hpp"

namespace {

using namespace hamf;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Json {
 public:
  Json& add(const std::string& k, double v) { return raw(k, fmt_double(v)); }
  Json& add(const std::string& k, long long v) { return raw(k, std::to_string(v)); }
  Json& add(const std::string& k, const std::string& v) {
    return raw(k, "\"" + v + "\"");
  }
  void print() {
    add("version", std::string(kVersion));
    std::string s = "{";
    for (std::size_t i = 0; i < items_.size(); ++i) {
      if (i) s += ",";
      s += "\"" + items_[i].first + "\":" + items_[i].second;
    }
    s += "}";
    std::cout << s << "\n";
  }

 private:
  Json& raw(const std::string& k, std::string v) {
    items_.emplace_back(k, std::move(v));
    return *this;
  }
  std::vector<std::pair<std::string, std::string>> items_;
};

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot open output file: " + path);
  return f;
}

struct PresetOpts {
  std::string preset = "log-squares";
  std::string rule_file;
  double C = 1.0;
  double beta = 1.0;
};

void add_preset_opts(CLI::App* cmd, PresetOpts& o) {
  cmd->add_option("--preset", o.preset,
                  "coefficient preset: log-squares (h_k = -1/k) or theta-only (h_1 = 1)");
  cmd->add_option("--rule-file", o.rule_file,
                  "CSV of k,re,im coefficient rows; overrides --preset");
  cmd->add_option("--decay-C", o.C, "decay certificate constant for --rule-file");
  cmd->add_option("--decay-beta", o.beta, "decay certificate exponent for --rule-file");
}

CoeffSequence make_sequence(const PresetOpts& o) {
  if (!o.rule_file.empty()) {
    std::ifstream f(o.rule_file);
    if (!f) throw std::invalid_argument("cannot open rule file: " + o.rule_file);
    std::vector<std::complex<double>> table;
    std::string line;
    while (std::getline(f, line)) {
      if (line.empty() || line[0] == '#') continue;
      long long k;
      double re, im;
      if (std::sscanf(line.c_str(), "%lld,%lf,%lf", &k, &re, &im) != 3)
        throw std::invalid_argument("bad rule row: " + line);
      if (k < 1) throw std::invalid_argument("rule rows need k >= 1");
      if (static_cast<std::size_t>(k) > table.size()) table.resize(k, {0.0, 0.0});
      table[k - 1] = {re, im};
    }
    return CoeffSequence::from_table(std::move(table), o.C, o.beta);
  }
  if (o.preset == "log-squares") return CoeffSequence::log_squares();
  if (o.preset == "theta-only") return CoeffSequence::theta_only();
  throw std::invalid_argument("unknown preset: " + o.preset);
}

TrigPolynomial load_psi(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open psi file: " + path);
  TrigPolynomial psi;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    long long n;
    double re, im;
    if (std::sscanf(line.c_str(), "%lld,%lf,%lf", &n, &re, &im) != 3)
      throw std::invalid_argument("bad psi row: " + line);
    psi.set(n, {re, im});
  }
  return psi;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weight-1/2 theta machinery, almost modular forms and their limit "
               "distribution (CSV columns: coeffs -> m,re,im; samples -> x,re_w,im_w; "
               "r-term -> x,re_R,im_R)"};
  app.require_subcommand(1);

  double tol_default = 1e-12;
  if (const char* env = std::getenv("HAMF_TOL")) {
    try {
      tol_default = std::stod(env);
    } catch (const std::exception&) {
      std::cerr << "error: HAMF_TOL is not a number\n";
      return 2;
    }
  }
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  app.add_option("--threads", threads,
                 "worker threads; results are independent of this value");
  double abs_tol = tol_default;
  app.add_option("--tol", abs_tol, "series truncation target (or env HAMF_TOL)");

  auto tolerance = [&] { return SeriesTolerance{abs_tol, 10'000'000}; };

  // ---- symbol ----------------------------------------------------------
  long long sym_a = 0, sym_b = 0;
  auto* sym = app.add_subcommand("symbol",
                                 "generalized quadratic residue symbol (a|b), odd b");
  sym->add_option("a", sym_a, "numerator")->required();
  sym->add_option("b", sym_b, "odd nonzero denominator")->required();
  sym->callback([&] { std::cout << qr_symbol(sym_a, sym_b) << "\n"; });

  // ---- group -----------------------------------------------------------
  auto* grp = app.add_subcommand("group", "upper half plane and Gamma_1(N) helpers");
  grp->require_subcommand(1);

  std::vector<long long> jf_gamma;
  std::vector<double> jf_z;
  auto* jf = grp->add_subcommand("j-factor",
                                 "theta multiplier j_gamma(z), gamma in Gamma_1(4)");
  jf->add_option("--gamma", jf_gamma, "matrix entries a,b,c,d")
      ->required()
      ->delimiter(',')
      ->expected(4);
  jf->add_option("--z", jf_z, "point x,y")->required()->delimiter(',')->expected(2);
  jf->callback([&] {
    const UnimodularInt g{jf_gamma[0], jf_gamma[1], jf_gamma[2], jf_gamma[3]};
    const UpperHalfPoint z{jf_z[0], jf_z[1]};
    const std::complex<double> v = j_factor(g, z);
    Json j;
    j.add("re", v.real()).add("im", v.imag()).print();
  });

  long long re_N = 0, re_height = 0;
  uint64_t re_seed = 1;
  auto* rel = grp->add_subcommand("random-element", "seeded element of Gamma_1(N)");
  rel->add_option("N", re_N, "level")->required();
  rel->add_option("--seed", re_seed, "rng seed");
  rel->add_option("--height", re_height, "entry bound (default max(N, 50))");
  rel->callback([&] {
    const long long height = re_height > 0 ? re_height : std::max<long long>(re_N, 50);
    const UnimodularInt g = random_gamma1(re_N, re_seed, height);
    Json j;
    j.add("a", g.a).add("b", g.b).add("c", g.c).add("d", g.d).print();
  });

  // ---- theta -----------------------------------------------------------
  auto* th = app.add_subcommand("theta", "theta series and transformation checks");
  th->require_subcommand(1);

  std::vector<double> th_z;
  long long th_k = 1;
  auto* th_eval = th->add_subcommand("eval", "evaluate theta(k z)");
  th_eval->add_option("--z", th_z, "point x,y")->required()->delimiter(',')->expected(2);
  th_eval->add_option("--k", th_k, "scale factor (default 1)");
  th_eval->callback([&] {
    const std::complex<double> v =
        theta_scaled(th_k, UpperHalfPoint{th_z[0], th_z[1]}, tolerance());
    Json j;
    j.add("re", v.real()).add("im", v.imag()).add("k", th_k).print();
  });

  long long ct_level = 4, ct_trials = 100, ct_height = 50;
  uint64_t ct_seed = 1;
  int ct_xi = 0;
  auto* ct = th->add_subcommand("check-transform",
                                "max transformation residual over random elements");
  ct->add_option("--level", ct_level, "congruence level (multiple of 4)");
  ct->add_option("--trials", ct_trials, "number of random elements");
  ct->add_option("--seed", ct_seed, "rng seed");
  ct->add_option("--height", ct_height, "entry bound for random elements");
  ct->add_option("--xi-K", ct_xi, "check xi_K with a_k = -1/(2k) instead of theta");
  ct->callback([&] {
    const TransformCheck r =
        check_transform(ct_level, ct_trials, ct_seed, ct_height, ct_xi, tolerance());
    Json j;
    j.add("max_residual", r.max_residual)
        .add("trials", r.trials)
        .add("level", ct_level)
        .print();
  });

  // ---- hamf ------------------------------------------------------------
  auto* hm = app.add_subcommand("hamf", "almost modular form xi = sum h(n^2 z)");
  hm->require_subcommand(1);

  PresetOpts hc_preset;
  long long hc_mmax = 1000;
  std::string hc_out;
  auto* hc = hm->add_subcommand("coeffs", "Fourier coefficients of xi (CSV m,re,im)");
  add_preset_opts(hc, hc_preset);
  hc->add_option("--mmax", hc_mmax, "largest coefficient index");
  hc->add_option("--out", hc_out, "output CSV path (stdout when omitted)");
  hc->callback([&] {
    const CoeffSequence h = make_sequence(hc_preset);
    const FourierCoeffs f = xi_coeff(h, hc_mmax);
    std::ostringstream csv;
    csv << "m,re,im\n";
    for (long long m = 0; m <= hc_mmax; ++m)
      csv << m << "," << fmt_double(f.values[m].real()) << ","
          << fmt_double(f.values[m].imag()) << "\n";
    if (hc_out.empty())
      std::cout << csv.str();
    else
      open_out(hc_out) << csv.str();
  });

  PresetOpts ha_preset;
  long long ha_K = 1, ha_M = 10000;
  auto* ha = hm->add_subcommand("approx-error",
                                "normalized coefficient distance to the K-th approximant");
  add_preset_opts(ha, ha_preset);
  ha->add_option("--K", ha_K, "approximant order")->required();
  ha->add_option("--M", ha_M, "coefficient horizon")->required();
  ha->callback([&] {
    const ApproxReport r = approx_error(make_sequence(ha_preset), ha_K, ha_M);
    Json j;
    j.add("K", r.K).add("M", r.M).add("error_sq", r.error_sq).print();
  });

  PresetOpts he_preset;
  std::vector<double> he_z;
  auto* he = hm->add_subcommand("eval", "evaluate xi(z)");
  add_preset_opts(he, he_preset);
  he->add_option("--z", he_z, "point x,y")->required()->delimiter(',')->expected(2);
  he->callback([&] {
    const std::complex<double> v =
        xi_eval(make_sequence(he_preset), UpperHalfPoint{he_z[0], he_z[1]}, tolerance());
    Json j;
    j.add("re", v.real()).add("im", v.imag()).print();
  });

  // ---- dist ------------------------------------------------------------
  auto* ds = app.add_subcommand("dist", "limit distribution experiments");
  ds->require_subcommand(1);

  PresetOpts sm_preset;
  double sm_y = 1e-4;
  long long sm_n = 1000;
  uint64_t sm_seed = 1;
  std::string sm_sampler = "stratified";
  std::string sm_out;
  auto* sm = ds->add_subcommand("sample",
                                "sample w = y^{1/4} xi(x + iy) along the horocycle");
  add_preset_opts(sm, sm_preset);
  sm->add_option("--y", sm_y, "horocycle height, 0 < y <= 0.1")->required();
  sm->add_option("--n", sm_n, "sample count");
  sm->add_option("--seed", sm_seed, "rng seed");
  sm->add_option("--sampler", sm_sampler, "stratified or iid");
  sm->add_option("--out", sm_out, "CSV path for x,re_w,im_w rows");
  sm->callback([&] {
    Sampler s;
    if (sm_sampler == "stratified")
      s = Sampler::kStratifiedGrid;
    else if (sm_sampler == "iid")
      s = Sampler::kIidUniform;
    else
      throw std::invalid_argument("unknown sampler: " + sm_sampler);
    const EmpiricalDistribution d =
        sample_values(make_sequence(sm_preset), sm_y, sm_n, sm_seed, s, threads,
                      tolerance());
    if (!sm_out.empty()) {
      std::ofstream f = open_out(sm_out);
      f << "x,re_w,im_w\n";
      for (long long j = 0; j < sm_n; ++j)
        f << fmt_double(sample_x(d, j)) << "," << fmt_double(d.samples[j].real()) << ","
          << fmt_double(d.samples[j].imag()) << "\n";
    }
    const RotationStat rs = rotation_invariance_stat(d);
    Json j;
    j.add("y", d.y)
        .add("n", sm_n)
        .add("mean_abs2", empirical_moment(d, 1, 1).real())
        .add("rotation_stat", rs.moment_stat)
        .add("ks_arg", rs.arg_ks)
        .add("trim_fraction", rs.trim_fraction)
        .add("seed", static_cast<long long>(sm_seed))
        .add("sampler", std::string(sampler_name(s)))
        .print();
  });

  PresetOpts va_preset;
  long long va_rmax = 200, va_pqcap = 200;
  auto* va = ds->add_subcommand("variance", "second-moment constant A of the limit law");
  add_preset_opts(va, va_preset);
  va->add_option("--rmax", va_rmax, "r cap");
  va->add_option("--pqcap", va_pqcap, "p, q cap");
  va->callback([&] {
    const VarianceReport r = variance_A(make_sequence(va_preset), va_rmax, va_pqcap);
    Json j;
    j.add("a_re", r.A.real())
        .add("a_im", r.A.imag())
        .add("tail_estimate", r.tail_estimate)
        .add("r_max", r.r_max)
        .add("pq_cap", r.pq_cap)
        .print();
  });

  std::string rt_psi, rt_out;
  long long rt_M = 100000, rt_trials = 10000;
  uint64_t rt_seed = 1;
  double rt_x = -1.0;
  auto* rt = ds->add_subcommand("r-term",
                                "error term (1/sqrt M) sum_{n<=M} psi(n^2 x)");
  rt->add_option("--psi", rt_psi, "CSV of n,re,im coefficient rows (n != 0)")->required();
  rt->add_option("--M", rt_M, "summation length");
  rt->add_option("--trials", rt_trials, "number of random x draws");
  rt->add_option("--seed", rt_seed, "rng seed");
  rt->add_option("--x", rt_x, "evaluate at a single x in [0,1) instead of sampling");
  rt->add_option("--out", rt_out, "CSV path for x,re_R,im_R rows");
  rt->callback([&] {
    const TrigPolynomial psi = load_psi(rt_psi);
    if (rt_x >= 0.0) {
      const std::complex<double> v = error_term_R(psi, rt_x, rt_M);
      Json j;
      j.add("M", rt_M).add("x", rt_x).add("re", v.real()).add("im", v.imag()).print();
      return;
    }
    if (rt_trials < 1) throw std::invalid_argument("r-term: trials >= 1");
    std::vector<double> xs(rt_trials);
    std::vector<std::complex<double>> vals(rt_trials);
    SplitMix64 rng(rt_seed);
    for (long long j = 0; j < rt_trials; ++j) xs[j] = rng.next_unit();
    const long long chunk = 16;
    const long long chunks = (rt_trials + chunk - 1) / chunk;
    parallel_chunks(threads, chunks, [&](long long ci) {
      const long long j0 = ci * chunk;
      const long long j1 = std::min(rt_trials, j0 + chunk);
      for (long long j = j0; j < j1; ++j) vals[j] = error_term_R(psi, xs[j], rt_M);
    });
    if (!rt_out.empty()) {
      std::ofstream f = open_out(rt_out);
      f << "x,re_R,im_R\n";
      for (long long j = 0; j < rt_trials; ++j)
        f << fmt_double(xs[j]) << "," << fmt_double(vals[j].real()) << ","
          << fmt_double(vals[j].imag()) << "\n";
    }
    const double mean_abs =
        pairwise_map_sum(rt_trials, [&](long long j) { return std::abs(vals[j]); }) /
        static_cast<double>(rt_trials);
    const double mean_abs2 =
        pairwise_map_sum(rt_trials, [&](long long j) { return std::norm(vals[j]); }) /
        static_cast<double>(rt_trials);
    Json j;
    j.add("M", rt_M)
        .add("trials", rt_trials)
        .add("seed", static_cast<long long>(rt_seed))
        .add("mean_abs", mean_abs)
        .add("mean_abs2", mean_abs2)
        .print();
  });

  // global flags (--threads, --tol) may appear after any subcommand
  std::function<void(CLI::App*)> allow_global = [&](CLI::App* a) {
    a->fallthrough();
    for (CLI::App* s : a->get_subcommands([](const CLI::App*) { return true; }))
      allow_global(s);
  };
  allow_global(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const term_cap_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
