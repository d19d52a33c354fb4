// complexes.hpp
//
// Graded complexes with contracting-homotopy data and the inductive
// three-term chain extension l = l1 + l2 + l3.
//
// Blocks of a GradedMap are indexed by *source* degree: block p maps
// X_p -> X_{p+shift}. Degrees below 0 and above top() are zero spaces, so
// the corresponding blocks simply have a zero dimension.

#pragma once

#include "chainext/exactla.hpp"
#include "chainext/report.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chainext::complexes {

struct GradedSpace {
  std::vector<std::size_t> dims;

  [[nodiscard]] std::size_t dim(int p) const {
    return (p < 0 || p >= static_cast<int>(dims.size())) ? 0 : dims[static_cast<std::size_t>(p)];
  }
  [[nodiscard]] int top() const { return static_cast<int>(dims.size()) - 1; }
  [[nodiscard]] std::size_t total() const {
    std::size_t t = 0;
    for (auto d : dims) t += d;
    return t;
  }
  /// Offset of degree p inside the direct sum of all degrees.
  [[nodiscard]] std::size_t offset(int p) const {
    std::size_t o = 0;
    for (int q = 0; q < p && q <= top(); ++q) o += dims[static_cast<std::size_t>(q)];
    return o;
  }
};

class GradedMap {
public:
  GradedMap() = default;
  GradedMap(const GradedSpace& space, int shift) : shift_(shift) {
    for (int p = 0; p <= space.top(); ++p) blocks_.emplace_back(space.dim(p + shift), space.dim(p));
  }

  [[nodiscard]] int shift() const { return shift_; }
  [[nodiscard]] std::size_t size() const { return blocks_.size(); }

  /// Block X_p -> X_{p+shift}; outside the stored range an empty matrix.
  [[nodiscard]] RatMatrix block(int p, const GradedSpace& space) const {
    if (p >= 0 && p < static_cast<int>(blocks_.size())) return blocks_[static_cast<std::size_t>(p)];
    return RatMatrix(space.dim(p + shift_), space.dim(p));
  }
  RatMatrix& at(int p) { return blocks_.at(static_cast<std::size_t>(p)); }
  [[nodiscard]] const RatMatrix& at(int p) const { return blocks_.at(static_cast<std::size_t>(p)); }

  void check_shapes(const GradedSpace& space, const std::string& name) const {
    if (static_cast<int>(blocks_.size()) != space.top() + 1)
      throw std::invalid_argument(name + ": expected " + std::to_string(space.top() + 1) + " blocks");
    for (int p = 0; p <= space.top(); ++p) {
      const auto& b = blocks_[static_cast<std::size_t>(p)];
      if (b.rows() != space.dim(p + shift_) || b.cols() != space.dim(p))
        throw std::invalid_argument(name + ": block " + std::to_string(p) + " is " + b.shape() +
                                    ", expected " + std::to_string(space.dim(p + shift_)) + "x" +
                                    std::to_string(space.dim(p)));
    }
  }

  /// The whole map as one square matrix on the direct sum of all degrees.
  [[nodiscard]] RatMatrix assemble(const GradedSpace& space) const {
    RatMatrix m(space.total(), space.total());
    for (int p = 0; p <= space.top(); ++p) {
      const int q = p + shift_;
      if (q < 0 || q > space.top()) continue;
      const auto& b = blocks_[static_cast<std::size_t>(p)];
      const std::size_t r0 = space.offset(q);
      const std::size_t c0 = space.offset(p);
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) m(r0 + r, c0 + c) = b(r, c);
    }
    return m;
  }

private:
  int shift_ = 0;
  std::vector<RatMatrix> blocks_;
};

struct HomotopyData {
  GradedSpace space;
  GradedMap l1;       // shift -1
  std::size_t f_dim = 0;
  RatMatrix eta;      // f_dim x dims[0]
  RatMatrix lambda;   // dims[0] x f_dim
  GradedMap s;        // shift +1

  void check_shapes() const {
    if (l1.shift() != -1) throw std::invalid_argument("l1 must have shift -1");
    if (s.shift() != 1) throw std::invalid_argument("s must have shift +1");
    l1.check_shapes(space, "l1");
    s.check_shapes(space, "s");
    if (eta.rows() != f_dim || eta.cols() != space.dim(0))
      throw std::invalid_argument("eta is " + eta.shape() + ", expected " + std::to_string(f_dim) + "x" +
                                  std::to_string(space.dim(0)));
    if (lambda.rows() != space.dim(0) || lambda.cols() != f_dim)
      throw std::invalid_argument("lambda is " + lambda.shape() + ", expected " +
                                  std::to_string(space.dim(0)) + "x" + std::to_string(f_dim));
  }
};

struct ChainExtension {
  GradedSpace space;
  GradedMap l1, l2, l3;

  [[nodiscard]] RatMatrix total(const GradedSpace& sp) const {
    return l1.assemble(sp) + l2.assemble(sp) + l3.assemble(sp);
  }
};

namespace detail {

inline std::string where(const RatMatrix& m) {
  auto z = RatMatrix(m.rows(), m.cols());
  auto d = m.first_difference(z);
  if (!d) return {};
  return "entry (" + std::to_string(d->first) + "," + std::to_string(d->second) + ") = " +
         m(d->first, d->second).pretty();
}

inline void zero_check(Report& rep, const std::string& name, const RatMatrix& m) {
  rep.add(name, m.is_zero(), m.is_zero() ? std::string{} : where(m));
}

}  // namespace detail

inline Report verify_homotopy(const HomotopyData& h) {
  h.check_shapes();
  Report rep;
  const auto& sp = h.space;
  for (int p = 1; p <= sp.top(); ++p)
    detail::zero_check(rep, "l1^2 = 0 at degree " + std::to_string(p),
                       h.l1.block(p - 1, sp) * h.l1.block(p, sp));
  detail::zero_check(rep, "eta lambda = 1", h.eta * h.lambda - RatMatrix::identity(h.f_dim));
  for (int p = 0; p <= sp.top(); ++p) {
    RatMatrix lhs = -Rat(1) * RatMatrix::identity(sp.dim(p));
    if (p == 0) lhs += h.lambda * h.eta;
    RatMatrix rhs = h.l1.block(p + 1, sp) * h.s.block(p, sp);
    if (p > 0) rhs += h.s.block(p - 1, sp) * h.l1.block(p, sp);
    detail::zero_check(rep, "lambda eta - 1 = l1 s + s l1 at degree " + std::to_string(p), lhs - rhs);
  }
  return rep;
}

/// Image of l1 : X_1 -> X_0.
inline ColumnSpace boundary_space(const HomotopyData& h) {
  return ColumnSpace(h.l1.block(1, h.space));
}

inline Report check_l2_conditions(const HomotopyData& h, const RatMatrix& l2_0,
                                  const std::optional<RatMatrix>& d_f = std::nullopt) {
  h.check_shapes();
  const std::size_t n0 = h.space.dim(0);
  if (l2_0.rows() != n0 || l2_0.cols() != n0)
    throw std::invalid_argument("l2_0 is " + l2_0.shape() + ", expected " + std::to_string(n0) + "x" +
                                std::to_string(n0));
  Report rep;
  const RatMatrix l1_1 = h.l1.block(1, h.space);
  const ColumnSpace b(l1_1);

  if (d_f) {
    const RatMatrix induced = h.eta * l2_0 * h.lambda;
    if (induced.rows() != d_f->rows() || induced.cols() != d_f->cols())
      throw std::invalid_argument("D_F has shape " + d_f->shape() + ", expected " + induced.shape());
    detail::zero_check(rep, "(i) induced map on X0/B equals D_F", induced - *d_f);
  }

  const RatMatrix lb = l2_0 * l1_1;
  std::string witness;
  for (std::size_t c = 0; c < lb.cols() && witness.empty(); ++c)
    if (!b.contains(lb.column(c))) witness = "l2 of boundary column " + std::to_string(c) + " leaves B";
  rep.add("(ii) l2(B) in B", witness.empty(), witness);

  const RatMatrix sq = l2_0 * l2_0;
  witness.clear();
  for (std::size_t c = 0; c < sq.cols() && witness.empty(); ++c)
    if (!b.contains(sq.column(c))) witness = "l2^2 of basis vector " + std::to_string(c) + " not in B";
  rep.add("(iii) l2^2(X0) in B", witness.empty(), witness);
  return rep;
}

class PreconditionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Inductive construction: l2 = s l2 l1 and l3 = s (l2 l2 + l3 l1) by ascending degree.
inline ChainExtension chain_extend(const HomotopyData& h, const RatMatrix& l2_0) {
  const Report pre = check_l2_conditions(h, l2_0);
  if (const Check* bad = pre.first_failure())
    throw PreconditionError("chain_extend: condition " + bad->name + " fails" +
                            (bad->detail.empty() ? "" : ": " + bad->detail));
  const auto& sp = h.space;
  ChainExtension e{sp, h.l1, GradedMap(sp, 0), GradedMap(sp, 1)};
  e.l2.at(0) = l2_0;
  for (int p = 1; p <= sp.top(); ++p)
    e.l2.at(p) = h.s.block(p - 1, sp) * e.l2.at(p - 1) * h.l1.block(p, sp);
  e.l3.at(0) = h.s.block(0, sp) * e.l2.at(0) * e.l2.at(0);
  for (int p = 1; p <= sp.top(); ++p)
    e.l3.at(p) = h.s.block(p, sp) * (e.l2.at(p) * e.l2.at(p) + e.l3.at(p - 1) * h.l1.block(p, sp));
  return e;
}

inline Report verify_nilpotent(const ChainExtension& e) {
  const auto& sp = e.space;
  auto l1 = [&](int p) { return e.l1.block(p, sp); };
  auto l2 = [&](int p) { return e.l2.block(p, sp); };
  auto l3 = [&](int p) { return e.l3.block(p, sp); };
  Report rep;
  for (int p = 0; p <= sp.top(); ++p) {
    const std::string at = " at degree " + std::to_string(p);
    detail::zero_check(rep, "l1 l2 + l2 l1 = 0" + at, l1(p) * l2(p) + l2(p - 1) * l1(p));
    detail::zero_check(rep, "l2^2 + l1 l3 + l3 l1 = 0" + at,
                       l2(p) * l2(p) + l1(p + 1) * l3(p) + l3(p - 1) * l1(p));
    detail::zero_check(rep, "l2 l3 + l3 l2 = 0" + at, l2(p + 1) * l3(p) + l3(p) * l2(p));
    detail::zero_check(rep, "l3^2 = 0" + at, l3(p + 1) * l3(p));
  }
  const RatMatrix l = e.total(sp);
  detail::zero_check(rep, "(l1+l2+l3)^2 = 0", l * l);
  return rep;
}

/// Vanishing statements: l2 = 0 above degree 1, l3 = 0 above degree 0.
inline Report verify_vanishing(const ChainExtension& e) {
  Report rep;
  for (int p = 2; p <= e.space.top(); ++p)
    detail::zero_check(rep, "l2 = 0 at degree " + std::to_string(p), e.l2.at(p));
  for (int p = 1; p <= e.space.top(); ++p)
    detail::zero_check(rep, "l3 = 0 at degree " + std::to_string(p), e.l3.at(p));
  return rep;
}

/// dim ker l - rank l for the total operator (which squares to zero).
inline std::size_t total_homology_dims(const ChainExtension& e) {
  const RatMatrix l = e.total(e.space);
  return e.space.total() - 2 * rank(l);
}

/// Homology of a square-zero operator on a finite space, computed directly.
inline std::size_t homology_dim(const RatMatrix& d) {
  if (d.rows() != d.cols()) throw std::invalid_argument("homology_dim: operator must be square");
  const std::size_t r = rank(d);
  return kernel_basis(d).size() - r;
}

}  // namespace chainext::complexes
