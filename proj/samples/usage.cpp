// Median interval, maximal fields and a Lorentz norm for a small grid.

#include "medmax/medmax.hpp"

#include <iostream>

using namespace medmax;

int main(int argc, char** argv) {
  const std::string path = argc > 1 ? argv[1] : MEDMAX_SAMPLES "/steps_3x3.json";
  const auto f = io::read_grid(path);
  const FractionalParams p{Rational(1, 2), 0, f.dim()};

  const auto all = CellSet::all(f.geometry());
  const auto med = median_set_by_definition(f, all, p);
  std::cout << "median interval: [" << to_string(med.lo) << ", " << to_string(med.hi) << "]\n";

  const auto fam = CubeFamily::whole_grid(f.geometry());
  for (auto op : {MaximalOp::R, MaximalOp::L}) {
    const auto m = fast_maximal(f, fam, p, op);
    std::cout << "m^" << to_string(op) << ":";
    for (const auto& v : m.values) std::cout << ' ' << v.str();
    std::cout << '\n';
  }

  const auto norm = lorentz_norm_from_distribution(f, {2, ExtRational(1)});
  std::cout << "L(2,1) norm: " << format_decimal(norm.real(), 20) << '\n';
  std::cout << "BV seminorm: " << to_string(discrete_bv(f).seminorm) << '\n';
}
