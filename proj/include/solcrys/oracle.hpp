#pragma once

// Independent brute-force verification: exact twisted-conjugacy counts on
// finite quotients, stabilized class counts on bounded windows, and
// mechanical checking of infinity certificates. Nothing here consults the
// closed forms; everything is raw orbit enumeration over the group
// arithmetic.

#include "solcrys/reidemeister.hpp"

namespace solcrys {

struct WindowReport {
  long x_bound = 0, z_bound = 0;
  std::vector<Int> history;  // measured-core class counts at radii 1..x_bound
  bool stabilized = false;
  Int final_count{0};
  // canonical representative (least element) of every measured class
  std::vector<std::pair<GroupElement, GroupElement>> representative_map;

  std::optional<GroupElement> class_of(const GroupElement& g) const;
};

// Union-find over all normal-form elements in the window |x| <= r,
// |z| <= z_bound (torsion coordinates unrestricted), with merges
// g -> c * g * phi(c)^{-1} for c over the generators and their inverses.
// Merges whose endpoints fall outside the window are deferred, never
// dropped: they become visible at larger radii. The reported count at
// radius r is the number of classes met by the fixed measured core
// (|x| <= 1), so the history is non-increasing and stabilization means the
// extra radius exposed no further merges.
WindowReport window_class_count(const GroupSpec& spec, const AutomorphismSpec& aut,
                                long x_bound, long z_bound);

// Exact twisted-conjugacy class count of the automorphism induced on the
// finite quotient by <a1^n, a2^n, T^M>, M the multiplicative order of the
// lattice action mod n doubled when odd (direction-reversing twists move
// the T-exponent in steps of two, so an even T-order is needed for the
// class structure to descend separably). Complete orbit enumeration; a
// lower bound for the Reidemeister number. Supported for GammaA and Pi1.
Int finite_quotient_count(const GroupSpec& spec, const AutomorphismSpec& aut,
                          long n);

// Order of that quotient, for reporting.
Int finite_quotient_order(const GroupSpec& spec, long n);

// Ordinary conjugacy classes of the same quotient, by an independent pass;
// equals finite_quotient_count for the identity automorphism.
Int finite_quotient_conjugacy_classes(const GroupSpec& spec, long n);

struct CertificateCheck {
  bool accepted = false;
  std::string reason;
};

CertificateCheck check_infinity_certificate(const InfinityCertificate& cert,
                                            const GroupSpec& spec,
                                            const AutomorphismSpec& aut);

}  // namespace solcrys
