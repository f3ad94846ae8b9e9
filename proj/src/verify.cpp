#include "subshift/verify.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

namespace subshift {

namespace {

Rat rat_abs(const Rat& v) { return v < 0 ? Rat(-v) : v; }

Int random_bits(std::mt19937_64& rng, int bits) {
  Int v = 0;
  int got = 0;
  while (got < bits) {
    v = (v << 64) | Int(rng());
    got += 64;
  }
  return v & (pow2(bits) - 1);
}

/** Uniform over [-2^bits, 2^bits). */
Int random_signed(std::mt19937_64& rng, int bits) {
  return random_bits(rng, bits + 1) - pow2(bits);
}

GroupPoint random_point(std::mt19937_64& rng, int dim, int bits) {
  std::vector<Int> c;
  c.reserve(static_cast<size_t>(dim));
  for (int a = 0; a < dim; ++a) c.push_back(random_signed(rng, bits));
  return GroupPoint(std::move(c));
}

Rat window_max_width(const Construction& c, int level) {
  return level == 0 ? Rat(1) : c.profile(level).max_width();
}

/** Smallest D in (window_level, depth] whose cumulative refinement beats 1/precision. */
int pick_depth(const Construction& c, int window_level, int precision, Int* sigma_out) {
  Rat maxw = window_max_width(c, window_level);
  Int sigma = 0;
  for (int d = window_level + 1; d <= c.depth(); ++d) {
    sigma += d;
    if (maxw / Rat(pow2(sigma)) < make_rat(1, precision)) {
      if (sigma_out) *sigma_out = sigma;
      return d;
    }
  }
  throw depth_limit_error("no constructed level refines below 1/" + std::to_string(precision) +
                          " over window level " + std::to_string(window_level));
}

}  // namespace

ReturnTimeWitness return_time_witness(const Construction& c, int window_level, int precision) {
  if (window_level < 0 || window_level > c.depth())
    throw std::out_of_range("return_time_witness: window level out of range");
  if (precision < 0) throw std::invalid_argument("return_time_witness: precision must be >= 0");
  ReturnTimeWitness w;
  w.window_level = window_level;
  w.precision = precision;
  w.element = zero_point(c.group_dim());
  if (precision <= 1) {
    // Every value trivially returns to within 1: no movement needed.
    w.depth_used = window_level;
    w.bound = 0;
    w.gap = c.tiling().side(window_level);
    return w;
  }
  Int sigma = 0;
  int hop_depth = pick_depth(c, window_level, precision, &sigma);
  w.depth_used = hop_depth;
  GroupPoint h = zero_point(c.group_dim());
  for (int j = window_level + 1; j <= hop_depth; ++j) {
    // The first variant slot carries refinement index 1: every digit zero, so
    // each hop keeps left endpoints and shrinks widths by 2^-j.
    GroupPoint u = lex_unrank(c.first_variant_slot(j), c.tiling().ratio(j), c.group_dim());
    h = h + u * c.tiling().side(j - 1);
  }
  w.element = h;
  w.bound = window_max_width(c, window_level) / Rat(pow2(sigma));
  w.gap = c.tiling().side(hop_depth);
  if (c.tiling().cells(window_level) <= 4096) {
    Rat got = coset_translate_bound(c, window_level, w.element);
    if (got > w.bound)
      throw std::logic_error("return_time_witness: computed translate moves values by " +
                             rat_str(got) + ", above the certified " + rat_str(w.bound));
  }
  return w;
}

Rat coset_translate_bound(const Construction& c, int window_level, const GroupPoint& shift) {
  if (window_level < 0 || window_level > c.depth())
    throw std::out_of_range("coset_translate_bound: window level out of range");
  if (shift.dim() != c.group_dim())
    throw std::invalid_argument("coset_translate_bound: dimension mismatch");
  Rat worst = 0;
  c.tiling().shape(window_level).for_each([&](const GroupPoint& g) {
    std::vector<Rat> x = c.point_value(g, window_level);
    DyadicBox box = c.resolve_box(g + shift, c.depth());
    for (int a = 0; a < c.poly_dim(); ++a) {
      const DyadicInterval& iv = box.axes[static_cast<size_t>(a)];
      Rat far = std::max(rat_abs(iv.left() - x[static_cast<size_t>(a)]),
                         rat_abs(iv.right() - x[static_cast<size_t>(a)]));
      if (far > worst) worst = far;
    }
  });
  return worst;
}

bool syndetic_gap_check(const Construction& c, const ReturnTimeWitness& w, int samples,
                        std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("syndetic_gap_check: samples must be >= 1");
  const int d = c.group_dim();
  std::mt19937_64 rng(seed);
  std::vector<GroupPoint> multipliers;
  multipliers.push_back(zero_point(d));
  multipliers.push_back(GroupPoint(std::vector<Int>(static_cast<size_t>(d), Int(1))));
  multipliers.push_back(GroupPoint(std::vector<Int>(static_cast<size_t>(d), Int(-1))));
  for (int s = 0; s < samples; ++s) multipliers.push_back(random_point(rng, d, 100));
  for (const GroupPoint& t : multipliers) {
    GroupPoint h = w.element + t * w.gap;
    if (coset_translate_bound(c, w.window_level, h) > w.bound) return false;
  }
  return true;
}

DensityReport density_estimate(const Construction& c, int scale, const std::vector<int>& levels) {
  if (scale < 0) throw std::invalid_argument("density_estimate: scale must be >= 0");
  if (levels.empty()) throw std::invalid_argument("density_estimate: no levels given");
  DensityReport rep;
  rep.scale = scale;
  rep.levels = levels;
  Rat w = scale_width(scale);
  Rat limit = c.rule().limit_fraction(scale);
  for (int level : levels) {
    if (level < 1 || level > c.depth()) throw std::out_of_range("density_estimate: level");
    Rat frac = Rat(c.profile(level).count_at_least(w)) / Rat(c.tiling().cells(level));
    if (!(frac > limit))
      throw std::logic_error("density_estimate: fraction " + rat_str(frac) + " at level " +
                             std::to_string(level) + " does not exceed the certified " +
                             rat_str(limit));
    rep.fractions.push_back(frac);
  }
  rep.certified_lower = limit;
  rep.mdim_term = limit * Rat(c.poly_dim());
  return rep;
}

bool rescale_slope_ok(const DyadicBox& box, int scale) {
  if (scale < 0) throw std::invalid_argument("rescale_slope_ok: scale must be >= 0");
  if (box.dim() == 0) throw std::invalid_argument("rescale_slope_ok: empty box");
  return box.min_width() >= scale_width(scale);
}

bool rescale_map_check(const Construction& c, int scale, const GroupPoint& g) {
  if (scale < 0) throw std::invalid_argument("rescale_map_check: scale must be >= 0");
  DyadicBox box = c.resolve_box(g, c.depth());
  if (box.min_width() < scale_width(scale))
    throw thin_box_error("box at " + g.str() + " is narrower than the scale-" +
                         std::to_string(scale) + " threshold " + rat_str(scale_width(scale)));
  return rescale_slope_ok(box, scale);
}

MdimBound mdim_lower_bound(const Construction& c, const std::vector<int>& scales) {
  if (scales.empty()) throw std::invalid_argument("mdim_lower_bound: no scales given");
  MdimBound b;
  b.lower = 0;
  b.upper = Rat(c.poly_dim());
  for (int n : scales) {
    DensityReport rep = density_estimate(c, n, {c.depth()});
    if (rep.mdim_term > b.lower) b.lower = rep.mdim_term;
    b.reports.push_back(std::move(rep));
  }
  b.limit_note = "per-scale lower bounds limit_fraction(n) * poly_dim have sup " +
                 rat_str(c.rule().terminal_value() * Rat(c.poly_dim())) +
                 " over all scales; no finite scale attains it";
  return b;
}

ContainmentWitness containment_check(const Construction& c, int window_level,
                                     const std::vector<std::vector<Rat>>& target, int precision) {
  if (window_level < 0 || window_level > c.depth())
    throw std::out_of_range("containment_check: window level out of range");
  if (precision < 1) throw std::invalid_argument("containment_check: precision must be >= 1");
  const int d = c.group_dim();
  const int p = c.poly_dim();
  Window shape = c.tiling().shape(window_level);
  std::vector<GroupPoint> pts = shape.points(shape.volume());
  if (target.size() != pts.size())
    throw std::invalid_argument("containment_check: target has " + std::to_string(target.size()) +
                                " entries, window has " + std::to_string(pts.size()));
  std::vector<DyadicBox> boxes;
  boxes.reserve(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) {
    if (static_cast<int>(target[i].size()) != p)
      throw std::invalid_argument("containment_check: target entry dimension mismatch");
    DyadicBox box = c.resolve_box(pts[i], window_level);
    if (!box.contains(target[i]))
      throw std::invalid_argument("containment_check: value at " + pts[i].str() +
                                  " lies outside its box " + box.str());
    boxes.push_back(std::move(box));
  }

  ContainmentWitness out;
  out.element = zero_point(d);
  bool exact = true;
  for (size_t i = 0; i < pts.size() && exact; ++i) {
    std::vector<Rat> x = c.point_value(pts[i], window_level);
    for (int a = 0; a < p; ++a)
      if (x[static_cast<size_t>(a)] != target[i][static_cast<size_t>(a)]) {
        exact = false;
        break;
      }
  }
  if (exact) {
    out.bound = 0;
    out.depth_used = window_level;
    return out;
  }

  Int sigma = 0;
  int hop_depth = pick_depth(c, window_level, precision, &sigma);
  out.depth_used = hop_depth;
  out.bound = window_max_width(c, window_level) / Rat(pow2(sigma));

  GroupPoint h = zero_point(d);
  for (int j = window_level + 1; j <= hop_depth; ++j) {
    const Int& prev_side = c.tiling().side(j - 1);
    Int positions = c.tiling().cells(j - 1) * p;
    Int index_less_1 = 0;
    std::vector<std::vector<Int>> digits(pts.size(), std::vector<Int>(static_cast<size_t>(p)));
    for (size_t i = 0; i < pts.size(); ++i) {
      GroupPoint res = zero_point(d);
      for (int a = 0; a < d; ++a)
        res.coords[static_cast<size_t>(a)] =
            floor_mod(pts[i].coords[static_cast<size_t>(a)] + h.coords[static_cast<size_t>(a)],
                      prev_side);
      Int cell_rank = lex_rank(res, prev_side);
      for (int a = 0; a < p; ++a) {
        Int lambda =
            boxes[i].axes[static_cast<size_t>(a)].piece_index(target[i][static_cast<size_t>(a)], j);
        digits[i][static_cast<size_t>(a)] = lambda;
        Int pos = cell_rank * p + a;
        index_less_1 += lambda * pow2(Int(j) * (positions - 1 - pos));
      }
    }
    if (index_less_1 >= c.variant_copies(j))
      throw depth_limit_error("containment needs refinement index " + int_str(index_less_1 + 1) +
                              " at level " + std::to_string(j) + " but only " +
                              int_str(c.variant_copies(j)) + " variants are materialized");
    Int slot = c.first_variant_slot(j) + index_less_1;
    GroupPoint u = lex_unrank(slot, c.tiling().ratio(j), d);
    h = h + u * prev_side;
    for (size_t i = 0; i < pts.size(); ++i)
      for (int a = 0; a < p; ++a)
        boxes[i].axes[static_cast<size_t>(a)] =
            boxes[i].axes[static_cast<size_t>(a)].piece(j, digits[i][static_cast<size_t>(a)]);
  }
  out.element = h;

  if (c.tiling().cells(window_level) <= 4096) {
    for (size_t i = 0; i < pts.size(); ++i) {
      std::vector<Rat> x = c.point_value(pts[i] + h, c.depth());
      for (int a = 0; a < p; ++a)
        if (rat_abs(x[static_cast<size_t>(a)] - target[i][static_cast<size_t>(a)]) > out.bound)
          throw std::logic_error("containment_check: bound not achieved at " + pts[i].str());
    }
  }
  return out;
}

bool SuiteResult::ok() const {
  for (const CheckResult& chk : checks)
    if (!chk.ok) return false;
  return true;
}

namespace {

void add_check(std::vector<CheckResult>& out, const std::string& name, bool ok,
               const std::string& detail) {
  out.push_back(CheckResult{name, ok, detail});
}

std::vector<int> effective_scales(const Construction& c, const VerifyOptions& opt) {
  std::vector<int> scales = opt.scales;
  if (scales.empty())
    for (int n = 0; n <= c.depth(); ++n) scales.push_back(n);
  std::sort(scales.begin(), scales.end());
  scales.erase(std::unique(scales.begin(), scales.end()), scales.end());
  return scales;
}

std::vector<CheckResult> suite_tilings(const Construction& c, const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  const TilingHierarchy& h = c.tiling();
  const int d = c.group_dim();
  std::mt19937_64 rng(opt.seed);

  bool ok = true;
  std::string detail = "32 random points per level";
  for (int level = 1; level <= c.depth() && ok; ++level) {
    for (int s = 0; s < 32 && ok; ++s) {
      GroupPoint g = random_point(rng, d, 80);
      if (reconstruct(locate(g, level, h), h) != g) {
        ok = false;
        detail = "level " + std::to_string(level) + " at " + g.str();
      }
    }
  }
  add_check(out, "tilings.roundtrip", ok, detail);

  ok = true;
  detail = "full-tile counts on aligned and shifted cubes";
  for (int level = 1; level <= c.depth() && ok; ++level) {
    const Int& n = h.side(level);
    if (count_full_tiles(Window::cube(n * 3, d), level, h) != ipow(Int(3), d) ||
        count_full_tiles(Window::box(std::vector<std::pair<Int, Int>>(
                             static_cast<size_t>(d), {Int(1), n * 3 + 1})),
                         level, h) != ipow(Int(2), d)) {
      ok = false;
      detail = "level " + std::to_string(level);
    }
  }
  add_check(out, "tilings.partition", ok, detail);

  std::string why = "window [-1000,1000)^dim";
  ok = check_prime_congruence(
      h, Window::box(std::vector<std::pair<Int, Int>>(static_cast<size_t>(d),
                                                      {Int(-1000), Int(1000)})),
      &why);
  add_check(out, "tilings.congruence", ok, why);

  ok = true;
  detail = "boundary ratio <= 4*dim/side at every level";
  std::vector<GroupPoint> corner = Window::cube(Int(2), d).points(Int(4));
  for (int level = 1; level <= c.depth() && ok; ++level) {
    if (!is_invariant(folner_window(level, h), corner, Rat(4 * d) / Rat(h.side(level)))) {
      ok = false;
      detail = "level " + std::to_string(level);
    }
  }
  add_check(out, "tilings.folner", ok, detail);

  ok = center_gap_witness(c.depth(), h).volume() == h.cells(c.depth());
  add_check(out, "tilings.gap", ok, "gap window covers " + int_str(h.cells(c.depth())) + " cells");
  return out;
}

std::vector<CheckResult> suite_schedule(const Construction& c, const VerifyOptions&) {
  std::vector<CheckResult> out;
  std::string why = "grid scales 0..10, levels 1..10";
  bool ok = verify_fraction_properties(c.rule(), 10, 10, &why);
  add_check(out, "schedule.shape", ok, why);

  ok = true;
  std::string detail;
  const Int sacrificed = pow2(c.poly_dim());
  {
    Int l1 = c.subtile_minimum(1);
    Rat req = c.rule().required_fraction(0, 1);
    Int scan = sacrificed + 1;
    while (Rat(scan - sacrificed) / Rat(scan) < req) ++scan;
    ok = scan == l1;
    detail = ok ? "first admissible subtile count " + int_str(l1)
                : "scan gives " + int_str(scan) + ", stored " + int_str(l1);
  }
  add_check(out, "schedule.level1", ok, detail);

  ok = true;
  detail = "defining inequalities hold and the copy counts are minimal";
  for (int k = 2; k <= c.depth() && ok; ++k) {
    const Profile& prev = c.profile(k - 1);
    Int cells = c.tiling().cells(k - 1);
    Int v = c.variant_copies(k);
    Int r = c.base_copies(k);
    bool decrement_fails = false;
    for (int n = 0; n <= k && ok; ++n) {
      Rat req = c.rule().required_fraction(n, k);
      Int count = prev.count_at_least(scale_width(n));
      if (Rat(count * r) < req * Rat(cells * (r + v))) {
        ok = false;
        detail = "level " + std::to_string(k) + " scale " + std::to_string(n) +
                 " misses its required fraction";
      }
      if (r > 1 && Rat(count * (r - 1)) < req * Rat(cells * (r - 1 + v))) decrement_fails = true;
    }
    if (ok && r > 1 && !decrement_fails) {
      ok = false;
      detail = "level " + std::to_string(k) + " copy count is not minimal";
    }
  }
  add_check(out, "schedule.copies", ok, detail);

  ok = true;
  detail = "profile fractions meet the schedule at every level";
  for (int k = 1; k <= c.depth() && ok; ++k)
    for (int n = 0; n <= k && ok; ++n) {
      Rat frac = Rat(c.profile(k).count_at_least(scale_width(n))) / Rat(c.tiling().cells(k));
      if (frac < c.rule().required_fraction(n, k)) {
        ok = false;
        detail = "level " + std::to_string(k) + " scale " + std::to_string(n) + ": fraction " +
                 rat_str(frac) + " below schedule";
      }
    }
  add_check(out, "schedule.realized", ok, detail);
  return out;
}

std::vector<CheckResult> suite_blocks(const Construction& c, const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  const int d = c.group_dim();
  std::mt19937_64 rng(opt.seed ^ 0xb10c5ULL);

  bool ok = true;
  std::string detail = "boxes nest along 32 random depth chains";
  for (int s = 0; s < 32 && ok; ++s) {
    GroupPoint g = random_point(rng, d, 80);
    DyadicBox prev = c.resolve_box(g, 0);
    for (int k = 1; k <= c.depth() && ok; ++k) {
      DyadicBox cur = c.resolve_box(g, k);
      for (int a = 0; a < c.poly_dim(); ++a) {
        const auto& pa = prev.axes[static_cast<size_t>(a)];
        const auto& ca = cur.axes[static_cast<size_t>(a)];
        if (ca.left() < pa.left() || ca.right() > pa.right()) {
          ok = false;
          detail = "box grows at " + g.str() + ", level " + std::to_string(k);
        }
      }
      prev = cur;
    }
  }
  add_check(out, "blocks.nesting", ok, detail);

  ok = true;
  detail = "translation by top-level tile multiples fixes every block";
  for (int s = 0; s < 16 && ok; ++s) {
    GroupPoint g = random_point(rng, d, 80);
    GroupPoint t = random_point(rng, d, 64);
    if (c.resolve_box(g + t * c.tiling().side(c.depth()), c.depth()) !=
        c.resolve_box(g, c.depth())) {
      ok = false;
      detail = "block moved at " + g.str();
    }
  }
  add_check(out, "blocks.periodicity", ok, detail);

  ok = true;
  detail = "tally matches the stored profile at levels";
  for (int k = 1; k <= c.depth(); ++k) {
    if (c.tiling().cells(k) > 4096) continue;
    std::map<Rat, Int> tally;
    c.tiling().shape(k).for_each(
        [&](const GroupPoint& g) { tally[c.resolve_box(g, k).width()] += 1; });
    std::vector<std::pair<Rat, Int>> entries(tally.begin(), tally.end());
    if (!(Profile::make(entries) == c.profile(k))) {
      ok = false;
      detail = "tally disagrees with the stored profile at level " + std::to_string(k);
      break;
    }
    detail += " " + std::to_string(k);
  }
  add_check(out, "blocks.profile", ok, detail);

  ok = true;
  detail = "repeated window renders are identical";
  {
    Window w = c.tiling().shape(1);
    auto p1 = c.window_pattern(w, c.depth());
    auto p2 = c.window_pattern(w, c.depth());
    Int expect = c.tiling().cells(1);
    if (Int(p1.size()) != expect || !(p1 == p2)) {
      ok = false;
      detail = "window render unstable";
    }
  }
  add_check(out, "blocks.pattern", ok, detail);
  return out;
}

std::vector<CheckResult> suite_return_times(const Construction& c, const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  ReturnTimeWitness id = return_time_witness(c, 1, 1);
  bool ok = id.element.is_zero() && id.bound == 0 && id.gap == c.tiling().side(1);
  add_check(out, "return-times.identity", ok, "precision 1 is witnessed by the identity");

  try {
    ReturnTimeWitness w = return_time_witness(c, 1, 2);
    add_check(out, "return-times.witness", true,
              "element " + w.element.str() + ", bound " + rat_str(w.bound) + ", gap " +
                  int_str(w.gap));
    bool synd = syndetic_gap_check(c, w, opt.samples, opt.seed);
    add_check(out, "return-times.syndetic", synd,
              std::to_string(opt.samples) + " random gap multiples plus 0 and +-1");
    GroupPoint off = w.element;
    off.coords[0] += 1;
    bool mis = coset_translate_bound(c, 1, off) > w.bound;
    add_check(out, "return-times.misaligned", mis, "off-by-one translate exceeds the bound");
  } catch (const depth_limit_error& e) {
    add_check(out, "return-times.witness", c.depth() < 2, std::string("skipped: ") + e.what());
  }
  return out;
}

std::vector<CheckResult> suite_density(const Construction& c, const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  for (int n : effective_scales(c, opt)) {
    try {
      DensityReport rep = density_estimate(c, n, {c.depth()});
      add_check(out, "density.scale" + std::to_string(n), true,
                "fraction " + rat_str(rep.fractions.back()) + " > " +
                    rat_str(rep.certified_lower) + " (level " + std::to_string(c.depth()) +
                    ", scale " + std::to_string(n) + ")");
    } catch (const std::exception& e) {
      add_check(out, "density.scale" + std::to_string(n), false, e.what());
    }
  }
  return out;
}

std::vector<CheckResult> suite_mdim(const Construction& c, const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  try {
    MdimBound b = mdim_lower_bound(c, effective_scales(c, opt));
    bool ok = b.lower > 0 && b.lower <= b.upper && b.upper == Rat(c.poly_dim());
    add_check(out, "mdim.range", ok, "lower " + rat_str(b.lower) + ", upper " + rat_str(b.upper));
    add_check(out, "mdim.limit", b.limit_note.find("sup") != std::string::npos, b.limit_note);
    bool mono = true;
    for (size_t i = 1; i < b.reports.size(); ++i)
      if (b.reports[i].certified_lower < b.reports[i - 1].certified_lower) mono = false;
    add_check(out, "mdim.monotone", mono, "certified bounds rise with the scale");
  } catch (const std::exception& e) {
    add_check(out, "mdim.range", false, e.what());
  }
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"tilings",      "schedule", "blocks",
                                              "return-times", "density",  "mdim"};
  return names;
}

ExitCode suite_exit_code(const std::string& suite) {
  if (suite == "tilings") return ExitCode::suite_tilings;
  if (suite == "schedule") return ExitCode::suite_schedule;
  if (suite == "blocks") return ExitCode::suite_blocks;
  if (suite == "return-times") return ExitCode::suite_return_times;
  if (suite == "density") return ExitCode::suite_density;
  if (suite == "mdim") return ExitCode::suite_mdim;
  throw config_error("unknown suite '" + suite + "'");
}

SuiteResult run_suite(const Construction& c, const std::string& suite, const VerifyOptions& opt) {
  SuiteResult res;
  res.suite = suite;
  res.code = suite_exit_code(suite);
  try {
    if (suite == "tilings") res.checks = suite_tilings(c, opt);
    if (suite == "schedule") res.checks = suite_schedule(c, opt);
    if (suite == "blocks") res.checks = suite_blocks(c, opt);
    if (suite == "return-times") res.checks = suite_return_times(c, opt);
    if (suite == "density") res.checks = suite_density(c, opt);
    if (suite == "mdim") res.checks = suite_mdim(c, opt);
  } catch (const std::exception& e) {
    res.checks.push_back(CheckResult{suite + ".exception", false, e.what()});
  }
  return res;
}

}  // namespace subshift
