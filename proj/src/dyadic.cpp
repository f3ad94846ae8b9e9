#include "subshift/dyadic.hpp"

#include <stdexcept>

namespace subshift {

DyadicInterval::DyadicInterval(Int lo_, Int hi_, unsigned long e_)
    : lo(std::move(lo_)), hi(std::move(hi_)), e(e_) {
  if (lo < 0 || lo >= hi || hi > (Int(1) << e))
    throw std::invalid_argument("dyadic interval: need 0 <= lo < hi <= 2^e");
  while (e > 0 && (lo & 1) == 0 && (hi & 1) == 0) {
    lo >>= 1;
    hi >>= 1;
    --e;
  }
}

DyadicInterval DyadicInterval::piece(int k, const Int& index) const {
  if (k < 1 || k > 64) throw std::invalid_argument("piece: k out of range");
  if (index < 0 || index >= (Int(1) << k)) throw std::invalid_argument("piece: index out of range");
  Int span = hi - lo;
  Int nlo = (lo << k) + index * span;
  return DyadicInterval(nlo, nlo + span, e + static_cast<unsigned long>(k));
}

Int DyadicInterval::piece_index(const Rat& v, int k) const {
  if (k < 1 || k > 64) throw std::invalid_argument("piece_index: k out of range");
  if (!contains(v)) throw std::invalid_argument("piece_index: value outside interval");
  Rat t = (v - left()) / width() * Rat(Int(1) << k);
  Int idx = floor_div(num(t), den(t));
  Int last = (Int(1) << k) - 1;
  if (idx > last) idx = last;
  return idx;
}

std::string DyadicInterval::str() const {
  return "[" + dyadic_str(left()) + ", " + dyadic_str(right()) + "]";
}

bool operator==(const DyadicInterval& a, const DyadicInterval& b) {
  return a.lo == b.lo && a.hi == b.hi && a.e == b.e;
}
bool operator!=(const DyadicInterval& a, const DyadicInterval& b) { return !(a == b); }

std::vector<DyadicInterval> subdivide(const DyadicInterval& iv, int k) {
  if (k < 1 || k > 20) throw std::invalid_argument("subdivide: k out of range");
  std::vector<DyadicInterval> out;
  Int count = Int(1) << k;
  out.reserve(count.convert_to<size_t>());
  for (Int i = 0; i < count; ++i) out.push_back(iv.piece(k, i));
  return out;
}

Rat DyadicBox::width() const {
  if (axes.empty()) throw std::invalid_argument("box: no axes");
  Rat w = axes[0].width();
  for (const auto& a : axes)
    if (a.width() > w) w = a.width();
  return w;
}

Rat DyadicBox::min_width() const {
  if (axes.empty()) throw std::invalid_argument("box: no axes");
  Rat w = axes[0].width();
  for (const auto& a : axes)
    if (a.width() < w) w = a.width();
  return w;
}

bool DyadicBox::contains(const std::vector<Rat>& v) const {
  if (static_cast<int>(v.size()) != dim()) return false;
  for (int i = 0; i < dim(); ++i)
    if (!axes[i].contains(v[i])) return false;
  return true;
}

std::string DyadicBox::str() const {
  std::string out;
  for (int i = 0; i < dim(); ++i) {
    if (i) out += " x ";
    out += axes[i].str();
  }
  return out;
}

bool operator==(const DyadicBox& a, const DyadicBox& b) { return a.axes == b.axes; }
bool operator!=(const DyadicBox& a, const DyadicBox& b) { return !(a == b); }

std::vector<DyadicBox> subdivide(const DyadicBox& box, int k) {
  if (k < 1 || k > 20) throw std::invalid_argument("subdivide: k out of range");
  int d = box.dim();
  if (d < 1 || d > 2) throw std::invalid_argument("subdivide: box dimension out of range");
  Int per_axis = Int(1) << k;
  std::vector<DyadicBox> out;
  std::vector<Int> idx(d, Int(0));
  while (true) {
    DyadicBox piece;
    for (int i = 0; i < d; ++i) piece.axes.push_back(box.axes[i].piece(k, idx[i]));
    out.push_back(std::move(piece));
    int axis = d - 1;
    while (axis >= 0) {
      ++idx[axis];
      if (idx[axis] < per_axis) break;
      idx[axis] = 0;
      --axis;
    }
    if (axis < 0) return out;
  }
}

}  // namespace subshift
