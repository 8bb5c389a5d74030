#pragma once

#include <array>
#include <cmath>

#include "bql/field.hpp"

namespace bql {

/// Original variables: surface elevation eta and velocity potential phi,
/// both real-valued and mean zero (phi is a potential, defined up to a
/// constant; the mean of eta is conserved because its evolution is a
/// divergence, so both zero modes are pinned to 0).
struct StateEtaPhi {
  Field eta;
  Field phi;
  const GridSpec& grid() const { return eta.grid(); }
};

/// Diagonalized variables u, v (complex, mean zero).  For data coming from
/// a real (eta, phi) pair, v equals conj(u) pointwise.
struct StateUV {
  Field u;
  Field v;
  const GridSpec& grid() const { return u.grid(); }
};

/// Differentiated variables w1 = u_x1, w2 = u_x2, w3 = v_x1, w4 = v_x2.
/// (w1, w2) and (w3, w4) are closed vector fields.
struct StateW {
  Field w1, w2, w3, w4;
  const GridSpec& grid() const { return w1.grid(); }

  std::array<const Field*, 4> fields() const { return {&w1, &w2, &w3, &w4}; }
  std::array<Field*, 4> fields() { return {&w1, &w2, &w3, &w4}; }

  double l2() const {
    const double a = w1.l2(), b = w2.l2(), c = w3.l2(), d = w4.l2();
    return std::sqrt(a * a + b * b + c * c + d * d);
  }
  bool finite() const {
    return w1.finite() && w2.finite() && w3.finite() && w4.finite();
  }
};

double state_l2(const StateEtaPhi& s);
double state_l2(const StateUV& s);
double state_distance(const StateW& a, const StateW& b);

StateEtaPhi in_rep(const StateEtaPhi& s, Rep r);
StateUV in_rep(const StateUV& s, Rep r);
StateW in_rep(const StateW& s, Rep r);

}  // namespace bql
