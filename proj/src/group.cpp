#include "subshift/group.hpp"

#include <algorithm>
#include <stdexcept>

#include "subshift/errors.hpp"

namespace subshift {

bool GroupPoint::is_zero() const {
  for (const Int& c : coords)
    if (c != 0) return false;
  return true;
}

std::string GroupPoint::str() const {
  std::string out;
  for (int i = 0; i < dim(); ++i) {
    if (i) out += ",";
    out += coords[i].str();
  }
  return out;
}

GroupPoint zero_point(int dim) { return GroupPoint(std::vector<Int>(dim, Int(0))); }

namespace {
void check_same_dim(const GroupPoint& a, const GroupPoint& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("group points of different dimension");
}
}  // namespace

GroupPoint operator+(const GroupPoint& a, const GroupPoint& b) {
  check_same_dim(a, b);
  GroupPoint r = a;
  for (int i = 0; i < a.dim(); ++i) r.coords[i] += b.coords[i];
  return r;
}

GroupPoint operator-(const GroupPoint& a, const GroupPoint& b) {
  check_same_dim(a, b);
  GroupPoint r = a;
  for (int i = 0; i < a.dim(); ++i) r.coords[i] -= b.coords[i];
  return r;
}

GroupPoint operator-(const GroupPoint& a) {
  GroupPoint r = a;
  for (Int& c : r.coords) c = -c;
  return r;
}

GroupPoint operator*(const GroupPoint& a, const Int& s) {
  GroupPoint r = a;
  for (Int& c : r.coords) c *= s;
  return r;
}

bool operator==(const GroupPoint& a, const GroupPoint& b) { return a.coords == b.coords; }
bool operator!=(const GroupPoint& a, const GroupPoint& b) { return !(a == b); }

bool lex_less(const GroupPoint& a, const GroupPoint& b) {
  check_same_dim(a, b);
  for (int i = 0; i < a.dim(); ++i) {
    if (a.coords[i] != b.coords[i]) return a.coords[i] < b.coords[i];
  }
  return false;
}

Window Window::box(std::vector<std::pair<Int, Int>> ranges) {
  if (ranges.empty()) throw std::invalid_argument("window: no axes");
  for (const auto& [lo, hi] : ranges)
    if (lo >= hi) throw std::invalid_argument("window: empty axis range");
  Window w;
  w.ranges = std::move(ranges);
  return w;
}

Window Window::cube(const Int& side, int dim) {
  if (side <= 0) throw std::invalid_argument("window: side must be positive");
  std::vector<std::pair<Int, Int>> r(dim, {Int(0), side});
  return box(std::move(r));
}

Window Window::parse(const std::string& text, int expect_dim) {
  std::vector<std::pair<Int, Int>> ranges;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    std::string part = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    size_t dots = part.find("..");
    if (dots == std::string::npos)
      throw config_error("window range '" + part + "' is not of the form a..b");
    Int lo, hi;
    try {
      lo = parse_int(part.substr(0, dots));
      hi = parse_int(part.substr(dots + 2));
    } catch (const std::invalid_argument& e) {
      throw config_error(std::string("window range: ") + e.what());
    }
    if (lo >= hi) throw config_error("window range '" + part + "' is empty");
    ranges.push_back({lo, hi});
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (expect_dim != 0 && static_cast<int>(ranges.size()) != expect_dim)
    throw config_error("window has " + std::to_string(ranges.size()) + " axes, expected " +
                       std::to_string(expect_dim));
  return box(std::move(ranges));
}

Int Window::volume() const {
  Int v = 1;
  for (const auto& [lo, hi] : ranges) v *= hi - lo;
  return v;
}

bool Window::contains(const GroupPoint& p) const {
  if (p.dim() != dim()) return false;
  for (int i = 0; i < dim(); ++i)
    if (p.coords[i] < ranges[i].first || p.coords[i] >= ranges[i].second) return false;
  return true;
}

std::string Window::str() const {
  std::string out;
  for (int i = 0; i < dim(); ++i) {
    if (i) out += ",";
    out += ranges[i].first.str() + ".." + ranges[i].second.str();
  }
  return out;
}

void Window::for_each(const std::function<void(const GroupPoint&)>& fn) const {
  GroupPoint p;
  p.coords.reserve(dim());
  for (const auto& [lo, hi] : ranges) p.coords.push_back(lo);
  while (true) {
    fn(p);
    int axis = dim() - 1;
    while (axis >= 0) {
      ++p.coords[axis];
      if (p.coords[axis] < ranges[axis].second) break;
      p.coords[axis] = ranges[axis].first;
      --axis;
    }
    if (axis < 0) return;
  }
}

std::vector<GroupPoint> Window::points(const Int& cap) const {
  if (volume() > cap)
    throw config_error("window " + str() + " has " + volume().str() + " points, cap is " + cap.str());
  std::vector<GroupPoint> out;
  out.reserve(static_cast<size_t>(volume().convert_to<unsigned long>()));
  for_each([&](const GroupPoint& p) { out.push_back(p); });
  return out;
}

namespace {

struct ShiftedBoxes {
  // ranges[b][axis] = half-open range of box b; boxes are F - kappa for each kappa in K
  std::vector<std::vector<std::pair<Int, Int>>> boxes;
  std::vector<std::vector<Int>> cuts;  // per axis, sorted unique breakpoints

  ShiftedBoxes(const Window& F, const std::vector<GroupPoint>& K) {
    if (K.empty()) throw std::invalid_argument("boundary: K must be non-empty");
    int d = F.dim();
    for (const GroupPoint& k : K) {
      if (k.dim() != d) throw std::invalid_argument("boundary: K element of wrong dimension");
      std::vector<std::pair<Int, Int>> r;
      for (int i = 0; i < d; ++i)
        r.push_back({F.ranges[i].first - k.coords[i], F.ranges[i].second - k.coords[i]});
      boxes.push_back(std::move(r));
    }
    cuts.resize(d);
    for (int i = 0; i < d; ++i) {
      for (const auto& b : boxes) {
        cuts[i].push_back(b[i].first);
        cuts[i].push_back(b[i].second);
      }
      std::sort(cuts[i].begin(), cuts[i].end());
      cuts[i].erase(std::unique(cuts[i].begin(), cuts[i].end()), cuts[i].end());
    }
  }

  bool box_contains(const std::vector<std::pair<Int, Int>>& b, const std::vector<Int>& p) const {
    for (size_t i = 0; i < p.size(); ++i)
      if (p[i] < b[i].first || p[i] >= b[i].second) return false;
    return true;
  }

  // Visit each compression cell with (lo corner, cell window). Within a cell every box
  // membership is uniform, so one representative decides the whole cell.
  void for_each_cell(const std::function<void(const std::vector<Int>&, const Window&)>& fn) const {
    int d = static_cast<int>(cuts.size());
    std::vector<size_t> idx(d, 0);
    while (true) {
      bool valid = true;
      for (int i = 0; i < d; ++i)
        if (idx[i] + 1 >= cuts[i].size()) valid = false;
      if (valid) {
        std::vector<Int> lo(d);
        std::vector<std::pair<Int, Int>> r(d);
        for (int i = 0; i < d; ++i) {
          lo[i] = cuts[i][idx[i]];
          r[i] = {cuts[i][idx[i]], cuts[i][idx[i] + 1]};
        }
        fn(lo, Window::box(std::move(r)));
      }
      int axis = d - 1;
      while (axis >= 0) {
        ++idx[axis];
        if (idx[axis] + 1 < cuts[axis].size()) break;
        idx[axis] = 0;
        --axis;
      }
      if (axis < 0) return;
    }
  }
};

}  // namespace

Int boundary_size(const Window& F, const std::vector<GroupPoint>& K) {
  ShiftedBoxes sb(F, K);
  Int total = 0;
  sb.for_each_cell([&](const std::vector<Int>& lo, const Window& cell) {
    bool in_union = false, in_all = true;
    for (const auto& b : sb.boxes) {
      if (sb.box_contains(b, lo))
        in_union = true;
      else
        in_all = false;
    }
    if (in_union && !in_all) total += cell.volume();
  });
  return total;
}

std::vector<GroupPoint> boundary(const Window& F, const std::vector<GroupPoint>& K, const Int& cap) {
  Int size = boundary_size(F, K);
  if (size > cap)
    throw config_error("boundary has " + size.str() + " points, cap is " + cap.str());
  ShiftedBoxes sb(F, K);
  std::vector<GroupPoint> out;
  sb.for_each_cell([&](const std::vector<Int>& lo, const Window& cell) {
    bool in_union = false, in_all = true;
    for (const auto& b : sb.boxes) {
      if (sb.box_contains(b, lo))
        in_union = true;
      else
        in_all = false;
    }
    if (in_union && !in_all) cell.for_each([&](const GroupPoint& p) { out.push_back(p); });
  });
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

bool is_invariant(const Window& F, const std::vector<GroupPoint>& K, const Rat& eps) {
  if (eps < 0) throw std::invalid_argument("is_invariant: eps must be >= 0");
  Rat ratio = make_rat(boundary_size(F, K), F.volume());
  return ratio <= eps;
}

}  // namespace subshift
