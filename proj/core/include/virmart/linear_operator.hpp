#pragma once

#include "virmart/expression.hpp"

namespace virmart {

// Mixed partial derivative: orders per point and per a_l (index l-2, trailing
// zeros trimmed). The empty key is the identity.
struct DerivKey {
  std::array<int, kMaxPoints> pt{};
  std::vector<int> apow;

  bool is_identity() const;
  long total_order() const;
  bool operator==(const DerivKey& o) const { return pt == o.pt && apow == o.apow; }
  bool operator<(const DerivKey& o) const {
    return pt != o.pt ? pt < o.pt : apow < o.apow;
  }
};

// Finite sum of (coefficient Expression) x (mixed partial). Operators keep an
// "a-headroom": applying may raise the largest a_l index by at most this much,
// and apply refuses inputs too close to the context cutoff instead of
// truncating.
class LinearOperator {
 public:
  explicit LinearOperator(Context ctx = Context{}, int headroom = 0)
      : ctx_(ctx), headroom_(headroom) {}

  const Context& context() const { return ctx_; }
  int headroom() const { return headroom_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<DerivKey, Expression>& terms() const { return terms_; }

  void add_term(const DerivKey& d, const Expression& coeff);

  LinearOperator operator+(const LinearOperator& o) const;
  LinearOperator operator-(const LinearOperator& o) const;
  LinearOperator operator*(const KRat& s) const;

  bool operator==(const LinearOperator& o) const {
    return ctx_ == o.ctx_ && terms_ == o.terms_;
  }
  bool operator!=(const LinearOperator& o) const { return !(*this == o); }

  /// The multiplication operator by e.
  static LinearOperator multiply(const Expression& e);

  std::string to_string() const;

 private:
  Context ctx_;
  int headroom_;
  std::map<DerivKey, Expression> terms_;
};

Expression apply(const LinearOperator& op, const Expression& e);

/// Symbolic composition p after q (Leibniz expansion of derivatives acting
/// on q's coefficients).
LinearOperator compose(const LinearOperator& p, const LinearOperator& q);

LinearOperator op_commutator(const LinearOperator& p, const LinearOperator& q);

/// op conjugated by the single-term expression z: z . op . z^{-1}.
LinearOperator conjugate(const LinearOperator& op, const Expression& z);

/// The reciprocal of a single-term expression without point or log factors.
Expression invert_term(const Expression& z);

}  // namespace virmart
