#pragma once

// Piecewise-constant functions on a finite uniform grid, cell sets, and the
// family of grid-aligned cubes inside a domain.  Cells are half-open cubes of
// side h; functions vanish outside the grid.  Storage is row-major (the last
// axis varies fastest).

#include "medmax/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace medmax {

struct Geometry {
  std::vector<std::size_t> shape;
  Rational h{1};

  Geometry() = default;
  Geometry(std::vector<std::size_t> s, Rational side) : shape(std::move(s)), h(std::move(side)) {
    if (shape.empty()) throw Error("grid must have at least one axis");
    for (auto n : shape)
      if (n == 0) throw Error("grid axes must be non-empty");
    if (h <= 0) throw Error("cell side must be positive");
  }

  std::size_t dim() const { return shape.size(); }

  std::size_t cell_count() const {
    std::size_t c = 1;
    for (auto n : shape) c *= n;
    return c;
  }

  Rational cell_measure() const { return ipow(h, static_cast<unsigned>(dim())); }

  Rational total_measure() const { return cell_measure() * Rational(cell_count()); }

  std::size_t index(std::span<const std::size_t> coords) const {
    std::size_t i = 0;
    for (std::size_t a = 0; a < dim(); ++a) i = i * shape[a] + coords[a];
    return i;
  }

  std::vector<std::size_t> coords(std::size_t i) const {
    std::vector<std::size_t> c(dim());
    for (std::size_t a = dim(); a-- > 0;) {
      c[a] = i % shape[a];
      i /= shape[a];
    }
    return c;
  }

  std::size_t max_side() const { return *std::min_element(shape.begin(), shape.end()); }

  friend bool operator==(const Geometry& a, const Geometry& b) {
    return a.shape == b.shape && a.h == b.h;
  }
};

class CellSet {
 public:
  CellSet() = default;
  explicit CellSet(Geometry g, bool fill = false)
      : geo_(std::move(g)), mask_(geo_.cell_count(), fill ? 1 : 0) {}
  CellSet(Geometry g, std::vector<std::uint8_t> mask) : geo_(std::move(g)), mask_(std::move(mask)) {
    if (mask_.size() != geo_.cell_count()) throw Error("mask size does not match grid");
    for (auto& m : mask_) m = m ? 1 : 0;
  }

  static CellSet all(const Geometry& g) { return CellSet(g, true); }
  static CellSet none(const Geometry& g) { return CellSet(g, false); }

  const Geometry& geometry() const { return geo_; }
  std::size_t size() const { return mask_.size(); }
  bool contains(std::size_t i) const { return mask_[i] != 0; }
  void insert(std::size_t i) { mask_[i] = 1; }
  void erase(std::size_t i) { mask_[i] = 0; }
  const std::vector<std::uint8_t>& mask() const { return mask_; }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto m : mask_) c += m;
    return c;
  }

  bool empty() const { return count() == 0; }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < mask_.size(); ++i)
      if (mask_[i]) out.push_back(i);
    return out;
  }

  bool subset_of(const CellSet& o) const {
    for (std::size_t i = 0; i < mask_.size(); ++i)
      if (mask_[i] && !o.mask_[i]) return false;
    return true;
  }

  friend bool operator==(const CellSet& a, const CellSet& b) {
    return a.geo_ == b.geo_ && a.mask_ == b.mask_;
  }

 private:
  Geometry geo_;
  std::vector<std::uint8_t> mask_;
};

inline Rational measure(const CellSet& s) {
  return s.geometry().cell_measure() * Rational(s.count());
}

class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(Geometry g, std::vector<Rational> values) : geo_(std::move(g)), values_(std::move(values)) {
    if (values_.size() != geo_.cell_count()) throw Error("value count does not match grid shape");
  }

  static GridFunction zero(const Geometry& g) {
    return GridFunction(g, std::vector<Rational>(g.cell_count(), Rational(0)));
  }

  static GridFunction indicator(const CellSet& s) {
    std::vector<Rational> v(s.size(), Rational(0));
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s.contains(i)) v[i] = 1;
    return GridFunction(s.geometry(), std::move(v));
  }

  // 1-D convenience with unit cells.
  static GridFunction line(const std::vector<Rational>& values, Rational h = 1) {
    return GridFunction(Geometry({values.size()}, std::move(h)), values);
  }

  const Geometry& geometry() const { return geo_; }
  std::size_t dim() const { return geo_.dim(); }
  std::size_t size() const { return values_.size(); }
  const Rational& operator[](std::size_t i) const { return values_[i]; }
  const std::vector<Rational>& values() const { return values_; }

  bool nonnegative() const {
    return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return v >= 0; });
  }

  GridFunction abs() const {
    std::vector<Rational> v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = boost::multiprecision::abs(values_[i]);
    return GridFunction(geo_, std::move(v));
  }

  GridFunction scaled(const Rational& c) const {
    std::vector<Rational> v(values_);
    for (auto& x : v) x *= c;
    return GridFunction(geo_, std::move(v));
  }

  CellSet support() const {
    CellSet s(geo_);
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (values_[i] != 0) s.insert(i);
    return s;
  }

  friend bool operator==(const GridFunction& a, const GridFunction& b) {
    return a.geo_ == b.geo_ && a.values_ == b.values_;
  }

 private:
  Geometry geo_;
  std::vector<Rational> values_;
};

enum class LevelSign { value, magnitude, below };

// {f > lambda} (value), {|f| > lambda} (magnitude) or {f < lambda} (below),
// intersected with E.  Non-strict turns > into >= and < into <=.
inline CellSet super_level_set(const GridFunction& f, const CellSet& e, const Rational& lambda,
                               bool strict = true, LevelSign sign = LevelSign::value) {
  if (!(f.geometry() == e.geometry())) throw Error("set and function live on different grids");
  CellSet out(f.geometry());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!e.contains(i)) continue;
    Rational v = sign == LevelSign::magnitude ? Rational(boost::multiprecision::abs(f[i])) : f[i];
    bool in;
    if (sign == LevelSign::below)
      in = strict ? v < lambda : v <= lambda;
    else
      in = strict ? v > lambda : v >= lambda;
    if (in) out.insert(i);
  }
  return out;
}

inline GridFunction restrict_to(const GridFunction& f, const CellSet& e) {
  if (!(f.geometry() == e.geometry())) throw Error("set and function live on different grids");
  std::vector<Rational> v(f.values());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!e.contains(i)) v[i] = 0;
  return GridFunction(f.geometry(), std::move(v));
}

struct GridCube {
  std::vector<std::size_t> anchor;
  std::size_t side = 1;

  Rational measure(const Geometry& g) const {
    return ipow(g.h * Rational(side), static_cast<unsigned>(g.dim()));
  }

  bool contains(std::span<const std::size_t> coords) const {
    for (std::size_t a = 0; a < anchor.size(); ++a)
      if (coords[a] < anchor[a] || coords[a] >= anchor[a] + side) return false;
    return true;
  }

  template <class Fn>
  void for_each_cell(const Geometry& g, Fn&& fn) const {
    const std::size_t n = anchor.size();
    std::vector<std::size_t> off(n, 0), c(n);
    while (true) {
      for (std::size_t a = 0; a < n; ++a) c[a] = anchor[a] + off[a];
      fn(g.index(c));
      std::size_t a = n;
      while (a-- > 0) {
        if (++off[a] < side) break;
        off[a] = 0;
      }
      if (a == static_cast<std::size_t>(-1)) return;
    }
  }

  friend bool operator==(const GridCube&, const GridCube&) = default;
};

// All grid-aligned cubes contained in a domain made of whole cells.
class CubeFamily {
 public:
  CubeFamily() = default;
  explicit CubeFamily(CellSet domain) : domain_(std::move(domain)) {}

  static CubeFamily whole_grid(const Geometry& g) { return CubeFamily(CellSet::all(g)); }

  const CellSet& domain() const { return domain_; }
  const Geometry& geometry() const { return domain_.geometry(); }
  std::size_t max_side() const { return geometry().max_side(); }

  bool admits(const GridCube& q) const {
    const auto& g = geometry();
    for (std::size_t a = 0; a < g.dim(); ++a)
      if (q.anchor[a] + q.side > g.shape[a]) return false;
    bool inside = true;
    q.for_each_cell(g, [&](std::size_t i) { inside = inside && domain_.contains(i); });
    return inside;
  }

  // Visits every admissible cube of the given side.
  template <class Fn>
  void for_each_of_side(std::size_t k, Fn&& fn) const {
    const auto& g = geometry();
    const std::size_t n = g.dim();
    for (std::size_t a = 0; a < n; ++a)
      if (k > g.shape[a]) return;
    GridCube q{std::vector<std::size_t>(n, 0), k};
    while (true) {
      if (admits(q)) fn(static_cast<const GridCube&>(q));
      std::size_t a = n;
      while (a-- > 0) {
        if (++q.anchor[a] + k <= g.shape[a]) break;
        q.anchor[a] = 0;
      }
      if (a == static_cast<std::size_t>(-1)) return;
    }
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t k = 1; k <= max_side(); ++k) for_each_of_side(k, fn);
  }

  std::vector<GridCube> cubes() const {
    std::vector<GridCube> out;
    for_each([&](const GridCube& q) { out.push_back(q); });
    return out;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for_each([&](const GridCube&) { ++c; });
    return c;
  }

 private:
  CellSet domain_;
};

}  // namespace medmax
