// hilbert.cpp — operators on the truncated emitter ⊗ Fock space.
#include "hilbert.hpp"

#include <cmath>
#include <stdexcept>

namespace dcesim {

HilbertSpace::HilbertSpace(int n_max_, int num_levels_) : n_max(n_max_), num_levels(num_levels_) {
  if (n_max < 0) throw std::invalid_argument("HilbertSpace: n_max must be >= 0");
  if (num_levels != 2 && num_levels != 3)
    throw std::invalid_argument("HilbertSpace: num_levels must be 2 or 3");
}

int HilbertSpace::index(Level s, int n) const {
  const int l = static_cast<int>(s);
  if (n < 0 || n > n_max) throw std::invalid_argument("HilbertSpace::index: photon number out of range");
  if (l < 0 || l >= num_levels) throw std::invalid_argument("HilbertSpace::index: level out of range");
  return num_levels * n + l;
}

Eigen::MatrixXcd annihilation(const HilbertSpace& hs) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(hs.dim(), hs.dim());
  for (int n = 1; n <= hs.n_max; ++n)
    for (int l = 0; l < hs.num_levels; ++l) {
      const Level s = static_cast<Level>(l);
      a(hs.index(s, n - 1), hs.index(s, n)) = std::sqrt(static_cast<double>(n));
    }
  return a;
}

Eigen::MatrixXcd creation(const HilbertSpace& hs) { return annihilation(hs).adjoint(); }

Eigen::MatrixXcd number_operator(const HilbertSpace& hs) {
  Eigen::MatrixXcd n_op = Eigen::MatrixXcd::Zero(hs.dim(), hs.dim());
  for (int i = 0; i < hs.dim(); ++i) n_op(i, i) = hs.photons_of(i);
  return n_op;
}

Eigen::MatrixXcd emitter_transfer(const HilbertSpace& hs, Level j, Level k) {
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(hs.dim(), hs.dim());
  if (static_cast<int>(j) >= hs.num_levels || static_cast<int>(k) >= hs.num_levels)
    throw std::invalid_argument("emitter_transfer: level outside the retained emitter basis");
  for (int n = 0; n <= hs.n_max; ++n) t(hs.index(j, n), hs.index(k, n)) = 1.0;
  return t;
}

Eigen::VectorXcd basis_state(const HilbertSpace& hs, Level s, int n) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(hs.dim());
  v(hs.index(s, n)) = 1.0;
  return v;
}

}  // namespace dcesim
