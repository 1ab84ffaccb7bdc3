#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pwilab/common.hpp"
#include "pwilab/connecting.hpp"
#include "pwilab/embedding.hpp"
#include "pwilab/experiments.hpp"
#include "pwilab/iet.hpp"
#include "pwilab/orbit_io.hpp"
#include "pwilab/pwi.hpp"
#include "pwilab/svg.hpp"

namespace pwilab::cli {

/// Accepts one-line ("4,2,1,3") and cycle ("(2)(143)") notation; single
/// digits per symbol in cycle form, omitted symbols are fixed points.
inline Permutation parse_perm(const std::string& text) {
  if (text.find('(') == std::string::npos) {
    std::vector<int> one;
    std::istringstream in(text);
    std::string field;
    while (std::getline(in, field, ',')) one.push_back(std::stoi(field));
    return Permutation(std::move(one));
  }
  std::vector<std::vector<int>> cycles;
  std::vector<int> current;
  bool open = false;
  int dmax = 0;
  for (char c : text) {
    if (c == '(') {
      open = true;
      current.clear();
    } else if (c == ')') {
      if (!open || current.empty()) throw IoError("bad cycle notation");
      cycles.push_back(current);
      open = false;
    } else if (c >= '1' && c <= '9') {
      if (!open) throw IoError("bad cycle notation");
      current.push_back(c - '0');
      dmax = std::max(dmax, c - '0');
    } else if (c != ' ') {
      throw IoError("bad cycle notation");
    }
  }
  if (open) throw IoError("bad cycle notation");
  std::vector<int> one(dmax);
  for (int j = 1; j <= dmax; ++j) one[j - 1] = j;
  for (const auto& cyc : cycles)
    for (std::size_t i = 0; i < cyc.size(); ++i)
      one[cyc[i] - 1] = cyc[(i + 1) % cyc.size()];
  return Permutation(std::move(one));
}

inline std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string field;
  while (std::getline(in, field, ',')) out.push_back(std::stod(field));
  return out;
}

inline std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  std::istringstream in(text);
  std::string field;
  while (std::getline(in, field, ',')) out.push_back(std::stoi(field));
  return out;
}

namespace detail {

inline Pwi load_pwi(const std::string& kase, const std::string& config) {
  if (!config.empty()) {
    std::ifstream in(config);
    if (!in) throw IoError("cannot open " + config);
    nlohmann::json j;
    in >> j;
    return pwi_from_json(j);
  }
  if (kase == "paper-3pwi") return build_paper_3pwi().pwi;
  if (kase == "return-strip" || kase == "paper-4cone")
    return build_return_strip().pwi;
  if (kase == "cone-family")
    return build_cone_family(constants::kConeAlpha, constants::kConeBeta,
                             constants::kGoldenRatioConjugate)
        .pwi;
  throw OutOfDomainError("unknown case: " + kase);
}

inline nlohmann::json complex_json(Complex z) {
  return {z.real(), z.imag()};
}

inline nlohmann::json report_json(const ReproduceReport& rep) {
  nlohmann::json xi = nlohmann::json::array();
  for (Complex z : rep.xi) xi.push_back(complex_json(z));
  nlohmann::json xi_pub = nlohmann::json::array();
  for (Complex z : rep.xi_published) xi_pub.push_back(complex_json(z));
  nlohmann::json j{
      {"case", rep.name},
      {"match_seed", complex_json(rep.match_seed)},
      {"match_length", rep.match_length},
      {"match_target", rep.match_target},
      {"alignment_shift", rep.alignment_shift},
      {"xi", xi},
      {"xi_published", xi_pub},
      {"xi_max_error", rep.xi_max_error},
      {"ergodic_residual", rep.ergodic_residual},
      {"parametric_residual", rep.parametric_residual},
      {"pass_match", rep.pass_match},
      {"pass_xi", rep.pass_xi},
      {"pass_residual", rep.pass_residual},
      {"pass_freq", rep.pass_freq},
  };
  if (!rep.frequencies.empty()) {
    j["frequencies"] = rep.frequencies;
    j["freq_reference"] = rep.freq_reference;
    j["freq_max_error"] = rep.freq_max_error;
  }
  return j;
}

inline void write_or_print(const std::string& text, const std::string& path,
                           std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw IoError("cannot open " + path);
  f << text;
}

}  // namespace detail

/// Dispatches a full command line; returns the process exit code
/// (0 success, 1 domain error, 2 usage error).
inline int run_command(std::vector<std::string> args, std::ostream& out,
                       std::ostream& err) {
  CLI::App app{"interval exchange / piecewise isometry lab"};
  app.require_subcommand(1);

  std::string lengths_s, perm_s, theta_s, lambda_re_s, lambda_im_s;
  std::string kase, config, section_s, in_path, out_path, orbit_out, style;
  double x = 0.0, seed_re = 0.0, seed_im = 0.0, h0_re = 0.0, h0_im = 0.0;
  double radius = 0.3, total = 0.0;
  std::int64_t steps = 1000, transient = 0, cap = 10000000, level = 8;
  int p0 = 0;
  bool inverse = false, json_out = false;

  auto add_iet_flags = [&](CLI::App* sub) {
    sub->add_option("--lengths", lengths_s, "comma-separated lengths")
        ->required();
    sub->add_option("--perm", perm_s, "one-line or cycle notation")
        ->required();
  };

  CLI::App* iet = app.add_subcommand("iet", "interval exchange operations");
  iet->require_subcommand(1);
  CLI::App* iet_apply = iet->add_subcommand("apply", "evaluate f or f^-1");
  add_iet_flags(iet_apply);
  iet_apply->add_option("--x", x)->required();
  iet_apply->add_flag("--inverse", inverse);
  CLI::App* iet_orbit = iet->add_subcommand("orbit", "forward orbit of x");
  add_iet_flags(iet_orbit);
  iet_orbit->add_option("--x", x)->required();
  iet_orbit->add_option("--steps", steps);
  iet_orbit->add_option("--out", out_path);
  CLI::App* iet_rauzy = iet->add_subcommand("rauzy", "one induction step");
  add_iet_flags(iet_rauzy);
  iet_rauzy->add_flag("--json", json_out);
  CLI::App* iet_stats = iet->add_subcommand("stats", "orbit of 0 statistics");
  add_iet_flags(iet_stats);
  iet_stats->add_option("--steps", steps);

  CLI::App* pwi = app.add_subcommand("pwi", "piecewise isometry operations");
  pwi->require_subcommand(1);
  auto add_pwi_flags = [&](CLI::App* sub) {
    sub->add_option("--case", kase, "paper-3pwi|return-strip|cone-family");
    sub->add_option("--config", config, "PWI JSON path");
    sub->add_option("--seed-re", seed_re);
    sub->add_option("--seed-im", seed_im);
  };
  CLI::App* pwi_orbit_cmd = pwi->add_subcommand("orbit", "orbit CSV");
  add_pwi_flags(pwi_orbit_cmd);
  pwi_orbit_cmd->add_option("--steps", steps);
  pwi_orbit_cmd->add_option("--transient", transient);
  pwi_orbit_cmd->add_option("--orbit-out", orbit_out);
  CLI::App* pwi_return = pwi->add_subcommand("return", "first return");
  add_pwi_flags(pwi_return);
  pwi_return->add_option("--section", section_s,
                         "comma-separated atom indices")
      ->required();
  pwi_return->add_option("--cap", cap);

  CLI::App* graph = app.add_subcommand("graph", "connecting graph JSON");
  graph->add_option("--perm", perm_s)->required();
  graph->add_option("--theta", theta_s, "angles for theta_sum/coefficients");
  graph->add_option("--p0", p0);

  CLI::App* embed = app.add_subcommand("embed", "embedding checks");
  CLI::App* embed_check = embed->add_subcommand("check", "screening report");
  embed_check->add_option("--case", kase);
  embed_check->add_option("--config", config);
  embed_check->add_option("--lengths", lengths_s);
  embed_check->add_option("--perm", perm_s);
  embed_check->add_option("--theta", theta_s);
  embed_check->add_option("--lambda-re", lambda_re_s);
  embed_check->add_option("--lambda-im", lambda_im_s);
  embed_check->add_option("--h0-re", h0_re);
  embed_check->add_option("--h0-im", h0_im);
  embed_check->add_option("--seed-re", seed_re);
  embed_check->add_option("--seed-im", seed_im);
  embed_check->add_option("--steps", steps);
  embed_check->add_option("--level", level);
  embed_check->add_option("--cap", cap);

  CLI::App* repro = app.add_subcommand("reproduce", "rerun a paper case");
  std::string repro_case;
  repro->add_option("case", repro_case, "paper-3pwi|paper-4cone")->required();
  repro->add_flag("--json", json_out);
  repro->add_option("--orbit-out", orbit_out);

  CLI::App* plot = app.add_subcommand("plot", "render SVG from orbit CSV");
  plot->add_option("--in", in_path)->required();
  plot->add_option("--config", config, "PWI JSON for atom boundaries");
  plot->add_option("--style", style, "scatter|cylinder")
      ->default_val("scatter");
  plot->add_option("--out", out_path)->required();
  plot->add_option("--radius", radius);
  plot->add_option("--total", total, "|I| for the cylinder x-axis");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (iet_apply->parsed()) {
      const Iet m(parse_reals(lengths_s), parse_perm(perm_s));
      const double y = inverse ? m.apply_inverse(x) : m.apply(x);
      out << format_double(y) << '\n';
    } else if (iet_orbit->parsed()) {
      const Iet m(parse_reals(lengths_s), parse_perm(perm_s));
      std::ostringstream csv;
      csv << "n,x,atom\n";
      double y = x;
      for (std::int64_t k = 0; k <= steps; ++k) {
        csv << k << ',' << format_double(y) << ',' << m.atom_of(y) << '\n';
        y = m.apply(y);
      }
      detail::write_or_print(csv.str(), out_path, out);
    } else if (iet_rauzy->parsed()) {
      const Iet m(parse_reals(lengths_s), parse_perm(perm_s));
      const RauzyResult r = rauzy_step(m);
      if (json_out) {
        out << nlohmann::json{{"type", r.type},
                              {"winner", r.winner},
                              {"loser", r.loser},
                              {"lengths", r.induced.lengths()},
                              {"perm", r.induced.perm().one_line()}}
                   .dump()
            << '\n';
      } else {
        out << "type " << r.type << " winner " << r.winner << " loser "
            << r.loser << "\nlengths";
        for (double v : r.induced.lengths()) out << ' ' << format_double(v);
        out << "\nperm";
        for (int v : r.induced.perm().one_line()) out << ' ' << v;
        out << '\n';
      }
    } else if (iet_stats->parsed()) {
      const Iet m(parse_reals(lengths_s), parse_perm(perm_s));
      const ZeroOrbitStats st = zero_orbit_statistics(m, steps);
      nlohmann::json xprime = nlohmann::json::array();
      for (double v : st.first_hit_point) xprime.push_back(v);
      out << nlohmann::json{{"p", st.p},
                            {"m", st.visit_counts},
                            {"k", st.first_hit_time},
                            {"xprime", xprime}}
                 .dump()
          << '\n';
    } else if (pwi_orbit_cmd->parsed()) {
      const Pwi sys = detail::load_pwi(kase, config);
      const OrbitRecord rec =
          pwi_orbit(sys, Complex(seed_re, seed_im), steps, transient);
      detail::write_or_print(orbit_csv(rec), orbit_out, out);
    } else if (pwi_return->parsed()) {
      const Pwi sys = detail::load_pwi(kase, config);
      std::vector<ConvexRegion> section;
      for (int idx : parse_ints(section_s)) section.push_back(sys.atom(idx));
      const PwiReturnResult r =
          pwi_first_return(sys, section, Complex(seed_re, seed_im), cap);
      out << nlohmann::json{{"k", r.steps},
                            {"z", detail::complex_json(r.point)}}
                 .dump()
          << '\n';
    } else if (graph->parsed()) {
      const Permutation perm = parse_perm(perm_s);
      const ConnectingGraph g = build_graph(perm);
      nlohmann::json j{{"cycles", g.cycles}, {"connected", g.connected()}};
      std::vector<double> theta(perm.d(), 0.0);
      if (!theta_s.empty()) theta = parse_reals(theta_s);
      const ParametricCoefficients pc =
          parametric_coefficients(theta, perm, p0);
      j["theta_sum"] = pc.theta_sum;
      nlohmann::json coeffs = nlohmann::json::array();
      for (Complex r : pc.r) coeffs.push_back(detail::complex_json(r));
      j["coefficients"] = coeffs;
      out << j.dump() << '\n';
    } else if (embed_check->parsed()) {
      nlohmann::json j;
      std::vector<double> theta;
      std::vector<Complex> lambda;
      Complex h0(h0_re, h0_im);
      std::optional<Iet> m;
      std::optional<Pwi> sys;
      Complex seed(seed_re, seed_im);
      if (!kase.empty()) {
        PaperSystem ps = kase == "paper-3pwi" ? build_paper_3pwi()
                                              : build_return_strip();
        m = *ps.iet;
        sys = ps.pwi;
        theta = ps.theta;
        lambda = ps.lambda;
        if (kase != "paper-3pwi") h0 = *ps.anchor;
        // The published anchor is the natural match seed for a case.
        if (embed_check->count("--seed-re") == 0 &&
            embed_check->count("--seed-im") == 0 && ps.anchor)
          seed = *ps.anchor;
      } else {
        m = Iet(parse_reals(lengths_s), parse_perm(perm_s));
        theta = parse_reals(theta_s);
        lambda.assign(m->d(), Complex(0.0, 0.0));
        if (!lambda_re_s.empty()) {
          const auto re = parse_reals(lambda_re_s);
          const auto im = lambda_im_s.empty()
                              ? std::vector<double>(re.size(), 0.0)
                              : parse_reals(lambda_im_s);
          for (std::size_t i = 0; i < re.size(); ++i)
            lambda[i] = Complex(re[i], im[i]);
        }
        if (!config.empty()) sys = detail::load_pwi("", config);
      }
      if (sys) {
        const std::size_t match =
            symbolic_match(*m, *sys, seed, static_cast<std::size_t>(steps));
        j["match_length"] = match;
      } else {
        j["match_length"] = nullptr;
      }
      const ErgodicEstimate est = xi_estimates(*m, theta, level, cap);
      nlohmann::json xi = nlohmann::json::array();
      for (Complex z : est.xi) xi.push_back(detail::complex_json(z));
      j["xi"] = xi;
      j["residual"] = ergodic_residual(*m, theta, lambda, h0, est.xi);
      j["resonant"] = resonance_check(*m, theta);
      out << j.dump() << '\n';
    } else if (repro->parsed()) {
      const ReproduceReport rep = reproduce(repro_case);
      if (!orbit_out.empty()) {
        const PaperSystem sys = repro_case == "paper-4cone"
                                    ? build_return_strip()
                                    : build_paper_3pwi();
        const OrbitRecord rec =
            pwi_orbit(sys.pwi, rep.match_seed, rep.match_target);
        export_orbit(rec, orbit_out);
      }
      if (json_out) {
        out << detail::report_json(rep).dump() << '\n';
      } else {
        out << rep.name << ": match " << rep.match_length << "/"
            << rep.match_target << ", residual " << rep.ergodic_residual
            << ", xi error " << rep.xi_max_error << '\n';
      }
    } else if (plot->parsed()) {
      const OrbitRecord rec = read_orbit_csv(in_path);
      PlotStyle ps;
      ps.marker_radius = radius;
      std::string svg;
      if (style == "cylinder") {
        std::vector<TangentState> states;
        states.reserve(rec.points.size());
        double tmax = 0.0;
        for (Complex p : rec.points) {
          states.push_back({p.real(), p.imag()});
          tmax = std::max(tmax, p.real());
        }
        svg = render_cylinder(states, total > 0.0 ? total : tmax, ps);
      } else {
        std::optional<Pwi> sys;
        if (!config.empty()) sys = detail::load_pwi("", config);
        svg = render_scatter(rec.points, sys ? &*sys : nullptr, ps);
      }
      write_svg(svg, out_path);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

inline int run_command(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_command(std::move(args), std::cout, std::cerr);
}

}  // namespace pwilab::cli
