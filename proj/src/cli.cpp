#include "kil/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <ostream>
#include <set>

#include "CLI11.hpp"
#include "kil/applications.hpp"
#include "kil/complexes.hpp"
#include "kil/io.hpp"

namespace kil {

namespace {

struct RunConfig {
  u64 p = 3;
  u64 seed = 0;
  u64 m = 0;
  u64 n = 0;
  u64 k_target = 0;
  u64 size = 0;
  std::string construction = "generic";
  std::string format;  // empty = per-command default
  std::string out_path;
  u64 budget_ops = 50'000'000;
  int threads = 1;

  // experiment parameters only: worker count and output routing must never
  // change artifact bytes
  Json to_json() const {
    return Json{{"p", p},
                {"seed", seed},
                {"m", m},
                {"n", n},
                {"k_target", k_target},
                {"size", size},
                {"construction", construction},
                {"budget_ops", budget_ops}};
  }
};

struct Artifact {
  Json result;
  std::vector<CsvRow> rows;
};

std::string render(const Artifact& art, const RunConfig& cfg, const std::string& subcommand,
                   const std::string& default_format) {
  std::string format = cfg.format.empty() ? default_format : cfg.format;
  if (format == "csv") return rows_to_csv(art.rows);
  Json j;
  j["meta"] = Json{{"subcommand", subcommand}, {"schema", kCsvSchema}, {"config", cfg.to_json()}};
  j["result"] = art.result;
  return j.dump(2) + "\n";
}

std::string ratio_str(u64 num, u64 den) { return Ratio{num, den}.str(); }

// --- subcommand bodies ---

Artifact run_enumerate(const RunConfig& cfg) {
  Fp F(cfg.p);
  int d = cfg.size ? static_cast<int>(cfg.size) : 3;
  u64 pts = count_points(d, F);
  Artifact art;
  art.result["dimension"] = d;
  art.result["points"] = pts;
  art.result["hyperplanes"] = pts;
  art.rows.push_back({cfg.p, cfg.seed, pts, "points", std::to_string(pts), "", ""});
  art.rows.push_back({cfg.p, cfg.seed, pts, "hyperplanes", std::to_string(pts), "", ""});
  if (d == 3) {
    u64 lines = count_lines_p3(F);
    // materialize when the budget allows, as a consistency witness
    if (lines <= cfg.budget_ops) {
      auto all = enumerate_lines_p3(F, cfg.budget_ops);
      if (all.size() != lines) fail(Err::InvalidConfig, "line enumeration mismatch");
    }
    art.result["lines"] = lines;
    art.rows.push_back({cfg.p, cfg.seed, lines, "lines", std::to_string(lines), "", ""});
  }
  return art;
}

Artifact run_klein_check(const RunConfig& cfg) {
  Fp F(cfg.p);
  auto lines = enumerate_lines_p3(F, cfg.budget_ops);
  std::set<Fvec> images;
  bool roundtrip = true;
  for (const LineP3& l : lines) {
    Pluecker L = klein_map(l, F);
    if (!on_klein(L, F)) fail(Err::NotOnKleinQuadric, "image misses the quadric");
    images.insert(L.c);
    if (klein_preimage(L, F) != l) roundtrip = false;
  }
  // count rational points of K directly
  u64 k_points = 0;
  {
    auto p5 = enumerate_points(5, F, cfg.budget_ops);
    for (const ProjPoint& x : p5)
      if (klein_form(Pluecker{x.c}, F) == 0) ++k_points;
  }
  bool bijection = images.size() == lines.size() && k_points == lines.size();
  bool meet_ok = true;
  u64 pairs_checked = 0;
  if (lines.size() * lines.size() <= cfg.budget_ops) {
    std::vector<Pluecker> imgs;
    imgs.reserve(lines.size());
    for (const LineP3& l : lines) imgs.push_back(klein_map(l, F));
    for (size_t i = 0; i < lines.size() && meet_ok; ++i)
      for (size_t j = 0; j < lines.size(); ++j) {
        bool meets = line_line_relation(lines[i], lines[j], F).rel != LineRelation::Skew;
        if (meets != lines_meet(imgs[i], imgs[j], F)) {
          meet_ok = false;
          break;
        }
        ++pairs_checked;
      }
  }
  Artifact art;
  art.result = Json{{"lines", lines.size()},       {"k_points", k_points},
                    {"bijection_ok", bijection},   {"roundtrip_ok", roundtrip},
                    {"meet_pairs_checked", pairs_checked}, {"meet_criterion_ok", meet_ok}};
  art.rows.push_back({cfg.p, cfg.seed, lines.size(), "k_points", std::to_string(k_points),
                      "(p^2+1)(p^2+p+1)", ""});
  if (!bijection || !roundtrip || !meet_ok) fail(Err::InvalidConfig, "klein check failed");
  return art;
}

Artifact run_incidence(const RunConfig& cfg) {
  Fp F(cfg.p);
  ArrangementMode mode =
      cfg.construction == "clustered" ? ArrangementMode::Clustered : ArrangementMode::Generic;
  Arrangement arr = random_arrangement(cfg.m, cfg.n, F, cfg.seed, mode, cfg.k_target);
  IncidenceReport rep = count_incidences(arr, F, cfg.threads);
  u64 oracle = count_incidences_bruteforce(arr, F);
  if (oracle != rep.incidences) fail(Err::InvalidConfig, "dual-path incidence mismatch");
  BoundVerdict v = bound_check(rep, F);
  Artifact art;
  art.result["arrangement"] = arrangement_to_json(arr);
  art.result["report"] =
      Json{{"I", rep.incidences}, {"m", rep.m},       {"n", rep.n},
           {"k_points", rep.k_points}, {"k_planes", rep.k_planes},
           {"swapped", v.swapped},     {"n_le_p2", v.n_le_p2},
           {"k", v.k},                 {"bound_value", v.bound_value},
           {"ratio", v.ratio.str()},   {"oracle_agrees", true}};
  // one sweep row per instance shape, so the aggregator reports them apart
  std::string label = "incidences[m=" + std::to_string(rep.m) + ";n=" + std::to_string(rep.n) +
                      ";k_target=" + std::to_string(cfg.k_target) + ";" + cfg.construction + "]";
  art.rows.push_back({cfg.p, cfg.seed, rep.m, label, std::to_string(rep.incidences),
                      "m*ceil(sqrt(n))+k*m=" + std::to_string(v.bound_value), v.ratio.str()});
  return art;
}

Artifact run_reduce(const RunConfig& cfg) {
  Fp F(cfg.p);
  Arrangement arr = random_arrangement(cfg.m, cfg.n, F, cfg.seed);
  IncidenceReport rep = count_incidences(arr, F);
  ReduceResult red = reduce_incidence(arr.points, arr.planes, F, cfg.seed);
  Artifact art;
  art.result = Json{{"I", rep.incidences},
                    {"cross_incidences", red.cross_incidences},
                    {"draws", red.draws},
                    {"covector", red.g.s.c},
                    {"match", red.cross_incidences == rep.incidences}};
  art.rows.push_back({cfg.p, cfg.seed, cfg.m, "cross_incidences",
                      std::to_string(red.cross_incidences), "I=" + std::to_string(rep.incidences),
                      ratio_str(red.cross_incidences, rep.incidences)});
  return art;
}

Artifact run_convert(const RunConfig& cfg) {
  Fp F(cfg.p);
  auto all = sl2_lines(F, cfg.budget_ops);
  u64 want = cfg.n ? cfg.n : 10;
  if (want > all.size()) fail(Err::InsufficientSpace, "chart holds fewer lines");
  Rng rng(cfg.seed);
  std::set<u64> picked;
  while (picked.size() < want) picked.insert(rng.below(all.size()));
  ThreeQuadricG g = sl2_three_quadric(F);
  std::vector<Fmat> carriers;
  for (u64 idx : picked) carriers.push_back(chart_line_carrier(all[idx], F));
  ConvertResult res = convert_lines(g, carriers, F);
  bool identity = res.meeting_ordered_pairs == res.incidences - want;
  Artifact art;
  art.result = Json{{"n", want},
                    {"incidences", res.incidences},
                    {"meeting_ordered_pairs", res.meeting_ordered_pairs},
                    {"meeting_unordered_pairs", res.meeting_unordered_pairs},
                    {"identity_ok", identity}};
  art.rows.push_back({cfg.p, cfg.seed, want, "meeting_ordered_pairs",
                      std::to_string(res.meeting_ordered_pairs),
                      "I-n=" + std::to_string(res.incidences - want), ""});
  if (!identity) fail(Err::InvalidConfig, "conversion identity failed");
  return art;
}

Artifact run_sl2_cover(const RunConfig& cfg) {
  Fp F(cfg.p);
  auto all = sl2_lines(F, cfg.budget_ops);
  CoverResult full = line_union_cover(all, F);
  u64 want = cfg.size ? cfg.size : (cfg.p * cfg.p + 3) / 4;
  if (want > all.size()) want = all.size();
  Rng rng(cfg.seed);
  std::set<u64> picked;
  while (picked.size() < want) picked.insert(rng.below(all.size()));
  std::vector<ChartLine> subset;
  for (u64 idx : picked) subset.push_back(all[idx]);
  CoverResult part = line_union_cover(subset, F);
  u64 group = cfg.p * cfg.p * cfg.p - cfg.p;
  Artifact art;
  art.result = Json{{"lines_total", all.size()},
                    {"group_order", group},
                    {"full_union", full.union_size},
                    {"full_covers_group", full.union_size == group},
                    {"subset_lines", want},
                    {"subset_union", part.union_size},
                    {"subset_fraction", part.fraction.str()}};
  art.rows.push_back({cfg.p, cfg.seed, want, "subset_union", std::to_string(part.union_size),
                      "0.1*p^3", part.fraction.str()});
  return art;
}

std::vector<AffinePoint2> planar_instance(const RunConfig& cfg, const Fp& F) {
  if (cfg.construction == "grid") {
    u64 side = cfg.size ? cfg.size : 8;
    std::vector<AffinePoint2> S;
    for (u64 a = 1; a <= side; ++a)
      for (u64 b = 1; b <= side; ++b) S.push_back({a, b});
    return S;
  }
  if (cfg.construction == "coprime_grid") return coprime_grid(cfg.size ? cfg.size : 8, F);
  // random: `size` distinct nonzero points
  u64 want = cfg.size ? cfg.size : 32;
  Rng rng(cfg.seed);
  std::set<AffinePoint2> S;
  while (S.size() < want) {
    AffinePoint2 s{rng.below(F.p()), rng.below(F.p())};
    if (s[0] == 0 && s[1] == 0) continue;
    S.insert(s);
  }
  return std::vector<AffinePoint2>(S.begin(), S.end());
}

Artifact run_bilinear(const RunConfig& cfg) {
  Fp F(cfg.p);
  auto S = planar_instance(cfg, F);
  u64 N = S.size();
  Artifact art;
  u64 cube = N * N;  // threshold check uses 64*v^3 >= N^2
  for (auto [name, form] : {std::pair{"dot", dot_form(F)}, std::pair{"wedge", wedge_form(F)}}) {
    u64 vals = bilinear_value_set(S, form, F).size();
    bool pass = 64 * vals * vals * vals >= cube;
    art.rows.push_back({cfg.p, cfg.seed, N, std::string("values_") + name, std::to_string(vals),
                        "N^(2/3)/4", pass ? "pass" : "fail"});
    u64 e = energy_bilinear(S, form, F, true);
    art.rows.push_back({cfg.p, cfg.seed, N, std::string("energy_") + name, std::to_string(e),
                        "N^3", ratio_str(e, N * N * N)});
    art.result[name] = Json{{"distinct_values", vals}, {"energy_nonzero", e}};
  }
  art.result["N"] = N;
  return art;
}

Artifact run_sumprod(const RunConfig& cfg) {
  Fp F(cfg.p);
  u64 k = cfg.size ? cfg.size : 16;
  std::vector<u64> A;
  for (u64 a = 1; a <= k; ++a) A.push_back(a);
  u64 plus = product_sum_set(A, A, SumProdSign::Plus, F).size();
  u64 minus = product_sum_set(A, A, SumProdSign::Minus, F).size();
  Artifact art;
  art.result = Json{{"A_size", k}, {"AA_plus_AA", plus}, {"AA_minus_AA", minus}};
  art.rows.push_back({cfg.p, cfg.seed, k, "AA_plus_AA", std::to_string(plus), "|A|^{3/2}/2", ""});
  art.rows.push_back(
      {cfg.p, cfg.seed, k, "AA_minus_AA", std::to_string(minus), "|A|^{3/2}/2", ""});
  return art;
}

Artifact run_distances(const RunConfig& cfg) {
  Fp F(cfg.p);
  std::vector<AffinePoint3> S;
  if (cfg.construction == "semi-isotropic") {
    u64 k = cfg.m ? cfg.m : 3, l = cfg.n ? cfg.n : 10;
    S = semi_isotropic_grid(k, l, F, cfg.budget_ops).points;
  } else {
    u64 want = cfg.size ? cfg.size : F.p();
    Rng rng(cfg.seed);
    std::set<AffinePoint3> set;
    while (set.size() < want) set.insert({rng.below(F.p()), rng.below(F.p()), rng.below(F.p())});
    S.assign(set.begin(), set.end());
  }
  DistanceSet census = distance_census(S, F);
  NullCensus nulls = null_census(S, F, cfg.budget_ops);
  u64 e = energy_distance(S, EnergyVariant::E, F, cfg.budget_ops);
  u64 estar = energy_distance(S, EnergyVariant::EStar, F, cfg.budget_ops);
  Artifact art;
  u64 N = S.size();
  art.result["points"] = Json::array();
  for (const auto& q : S) art.result["points"].push_back(std::vector<u64>{q[0], q[1], q[2]});
  art.result.update(Json{{"N", N},
                         {"distinct_distances", census.values.size()},
                         {"max_pinned", census.max_pinned},
                         {"null_pairs", nulls.null_pairs},
                         {"nontrivial_null_triangles", nulls.nontrivial_null_triangles},
                         {"energy", e},
                         {"energy_star", estar},
                         {"semi_isotropic_planar", in_semi_isotropic_plane(S, F)}});
  art.rows.push_back({cfg.p, cfg.seed, N, "max_pinned", std::to_string(census.max_pinned),
                      "ceil(sqrt(N))", ""});
  art.rows.push_back({cfg.p, cfg.seed, N, "nontrivial_null_triangles",
                      std::to_string(nulls.nontrivial_null_triangles), "0", ""});
  art.rows.push_back({cfg.p, cfg.seed, N, "energy", std::to_string(e), "N^{5/2}", ""});
  art.rows.push_back({cfg.p, cfg.seed, N, "energy_star", std::to_string(estar), "E", ""});
  return art;
}

u64 smallest_admissible_prime(u64 n) {
  u64 p = 4 * n * n + 1;
  while (!Fp::is_prime(p)) ++p;
  return p;
}

Artifact run_tightness(const RunConfig& cfg) {
  u64 side = cfg.n ? cfg.n : 12;
  u64 p = cfg.p > 4 * side * side ? cfg.p : smallest_admissible_prime(side);
  Fp F(p);
  auto S = coprime_grid(side, F);
  u64 N = S.size();
  BilinearForm dotf = dot_form(F);
  u64 e = energy_bilinear(S, dotf, F, false);
  u64 zeros = energy_bilinear_zero_quadruples(S, dotf, F);
  Artifact art;
  art.result = Json{{"grid_side", side}, {"p", p},         {"N", N},
                    {"energy", e},       {"N_cubed", N * N * N}, {"zero_quadruples", zeros},
                    {"ratio", ratio_str(e, N * N * N)}};
  art.rows.push_back({p, cfg.seed, N, "energy", std::to_string(e), "N^3",
                      ratio_str(e, N * N * N)});
  art.rows.push_back({p, cfg.seed, N, "zero_quadruples", std::to_string(zeros), "N^2",
                      ratio_str(zeros, N * N)});
  return art;
}

Artifact run_vanishing_poly(const RunConfig& cfg) {
  Fp F(cfg.p);
  u64 want = cfg.size ? cfg.size : 5;
  u64 total = count_lines_p3(F);
  if (want > total) fail(Err::InsufficientSpace, "fewer lines exist");
  Rng rng(cfg.seed);
  std::set<LineP3> lines;
  while (lines.size() < want) {
    ProjPoint a = point_by_index(rng.below(count_points(3, F)), F);
    ProjPoint b = a;
    while (b == a) b = point_by_index(rng.below(count_points(3, F)), F);
    lines.insert(line_from_points(a, b, F));
  }
  std::vector<LineP3> ls(lines.begin(), lines.end());
  u64 d = 1;
  while (monomial_count(d) <= (d + 1) * want) ++d;
  Poly4 poly = fit_vanishing_polynomial(ls, d, F);
  Artifact art;
  art.result = Json{{"lines", want},
                    {"degree", d},
                    {"monomials", monomial_count(d)},
                    {"coeffs", poly.coeffs},
                    {"verified", true}};
  art.rows.push_back({cfg.p, cfg.seed, want, "vanishing_degree", std::to_string(d),
                      "C(d+3,3)>(d+1)L", ""});
  return art;
}

Artifact run_cubic(const RunConfig& cfg) {
  Fp F(cfg.p);
  CubicSurface surf = cubic_surface_points(F, {1, 1, 1, 1}, cfg.budget_ops);
  // collinearity after removal, by affine triple rank
  u64 maxcol = 0;
  {
    std::vector<ProjPoint> pts;
    for (const auto& q : surf.points)
      pts.push_back(make_point(Fvec{1, q[0], q[1], q[2]}, F));
    if (pts.size() >= 2) maxcol = max_collinear(pts, F).k;
  }
  Artifact art;
  art.result = Json{{"points_total", surf.all_points.size()},
                    {"lines_found", surf.lines_found},
                    {"points_after_removal", surf.points.size()},
                    {"max_collinear_after_removal", maxcol}};
  art.rows.push_back({cfg.p, cfg.seed, surf.points.size(), "max_collinear_after_removal",
                      std::to_string(maxcol), "3", ""});
  return art;
}

Artifact run_report(const RunConfig& cfg, const std::vector<std::string>& inputs) {
  if (inputs.empty()) fail(Err::MissingArtifact, "no sweep artifacts given");
  struct Agg {
    u64 count = 0;
    double min_ratio = 0, max_ratio = 0;
    bool any_ratio = false;
    bool all_pass = true;
  };
  std::map<std::string, Agg> by_stat;
  for (const std::string& path : inputs) {
    for (const CsvRow& r : rows_from_csv(read_file(path))) {
      Agg& a = by_stat[r.statistic];
      ++a.count;
      if (r.ratio == "fail") a.all_pass = false;
      auto slash = r.ratio.find('/');
      if (slash != std::string::npos) {
        double num = std::stod(r.ratio.substr(0, slash));
        double den = std::stod(r.ratio.substr(slash + 1));
        double v = den == 0 ? 0 : num / den;
        if (!a.any_ratio || v < a.min_ratio) a.min_ratio = v;
        if (!a.any_ratio || v > a.max_ratio) a.max_ratio = v;
        a.any_ratio = true;
      }
    }
  }
  Artifact art;
  for (const auto& [stat, a] : by_stat) {
    art.result[stat] = Json{{"rows", a.count},
                            {"min_ratio", a.min_ratio},
                            {"max_ratio", a.max_ratio},
                            {"pass", a.all_pass}};
    char minbuf[32], maxbuf[32];
    std::snprintf(minbuf, sizeof minbuf, "%.9g", a.min_ratio);
    std::snprintf(maxbuf, sizeof maxbuf, "%.9g", a.max_ratio);
    art.rows.push_back({cfg.p, cfg.seed, a.count, stat, a.all_pass ? "pass" : "fail",
                        std::string(minbuf) + ".." + maxbuf, ""});
  }
  return art;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact line-geometry and incidence-counting laboratory over F_p"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::vector<std::string> report_inputs;
  std::string active;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "odd prime modulus");
    sub->add_option("--seed", cfg.seed, "rng seed, echoed into outputs");
    sub->add_option("--m", cfg.m, "point count / first size");
    sub->add_option("--n", cfg.n, "plane count / second size");
    sub->add_option("--k-target", cfg.k_target, "planted collinearity");
    sub->add_option("--size", cfg.size, "instance size");
    sub->add_option("--construction", cfg.construction, "instance family");
    sub->add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json", ""}));
    sub->add_option("--out", cfg.out_path, "artifact path (atomic write)");
    sub->add_option("--budget-ops", cfg.budget_ops, "operation budget");
    sub->add_option("--threads", cfg.threads, "worker count for counting passes");
    sub->callback([&, sub] { active = sub->get_name(); });
    return sub;
  };

  add_common(app.add_subcommand("enumerate", "counts of points/planes/lines in P^d"));
  add_common(app.add_subcommand("klein-check", "line <-> quadric-point bijection"));
  add_common(app.add_subcommand("incidence", "count a seeded arrangement and the bound ratio"));
  add_common(app.add_subcommand("reduce", "point-plane to line-line reduction"));
  add_common(app.add_subcommand("convert", "lines in the chart to a point-plane arrangement"));
  add_common(app.add_subcommand("sl2-cover", "union of lines in the group chart"));
  add_common(app.add_subcommand("bilinear", "distinct bilinear values and energy"));
  add_common(app.add_subcommand("sumprod", "product-sum set census"));
  add_common(app.add_subcommand("distances", "distance set, pinned and null censuses"));
  add_common(app.add_subcommand("tightness", "coprime-grid energy against N^3"));
  add_common(app.add_subcommand("vanishing-poly", "form vanishing on seeded lines"));
  add_common(app.add_subcommand("cubic", "diagonal cubic surface census"));
  auto* rep = add_common(app.add_subcommand("report", "aggregate sweep artifacts"));
  rep->add_option("inputs", report_inputs, "sweep csv files");

  std::vector<std::string> argv = args;
  std::reverse(argv.begin(), argv.end());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << Json{{"code", "InvalidConfig"},
                {"message", e.what()},
                {"subcommand", active},
                {"config", cfg.to_json()}}
               .dump()
        << "\n";
    return 1;
  }

  if (const char* env = std::getenv("KIL_BUDGET_OPS")) {
    cfg.budget_ops = std::strtoull(env, nullptr, 10);
  }

  try {
    Artifact art;
    std::string default_format = "json";
    if (active == "enumerate") art = run_enumerate(cfg);
    else if (active == "klein-check") art = run_klein_check(cfg);
    else if (active == "incidence") art = run_incidence(cfg);
    else if (active == "reduce") art = run_reduce(cfg);
    else if (active == "convert") art = run_convert(cfg);
    else if (active == "sl2-cover") art = run_sl2_cover(cfg);
    else if (active == "bilinear") { art = run_bilinear(cfg); default_format = "csv"; }
    else if (active == "sumprod") { art = run_sumprod(cfg); default_format = "csv"; }
    else if (active == "distances") { art = run_distances(cfg); default_format = "csv"; }
    else if (active == "tightness") { art = run_tightness(cfg); default_format = "csv"; }
    else if (active == "vanishing-poly") art = run_vanishing_poly(cfg);
    else if (active == "cubic") art = run_cubic(cfg);
    else if (active == "report") { art = run_report(cfg, report_inputs); default_format = "csv"; }
    else fail(Err::InvalidConfig, "unknown subcommand");

    std::string rendered = render(art, cfg, active, default_format);
    if (cfg.out_path.empty()) {
      out << rendered;
    } else {
      atomic_write(cfg.out_path, rendered);
    }
    return 0;
  } catch (const Error& e) {
    err << Json{{"code", err_name(e.code())},
                {"message", e.what()},
                {"subcommand", active},
                {"config", cfg.to_json()}}
               .dump()
        << "\n";
    return (e.code() == Err::SearchExhausted || e.code() == Err::BudgetExceeded) ? 2 : 1;
  } catch (const std::exception& e) {
    err << Json{{"code", "Internal"}, {"message", e.what()}, {"subcommand", active}}.dump()
        << "\n";
    return 1;
  }
}

}  // namespace kil
