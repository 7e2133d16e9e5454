// Certifies the reference triple, then looks for points where the order-2 gap
// is negative anyway and prints them next to the region each lies in.

#include <cstdio>

#include "subadd/subadd.hpp"

int main() {
  using namespace subadd;
  const Params p = reference_params();
  const CertificateReport cert = certify_S2(p);
  std::printf("certificate for (mu, sigma, alpha) = (%g, %g, %g): %s\n", p.mu(), p.sigma(), p.alpha(),
              to_string(cert.verdict));
  for (const auto& c : cert.conditions) std::printf("  %-8s %s\n", to_string(c.verdict), c.name.c_str());

  for (double a : {1.0, 2.0, 3.0}) {
    const auto v = find_violation(Order(a), p, default_violation_scan(p));
    if (!v) {
      std::printf("a = %g: no violation in the default box\n", a);
      continue;
    }
    const RegionFlags r = classify_region(v->point.x, v->point.y);
    std::printf("a = %g: f(a x + y) exceeds a f(x) + f(y) by %.10f at (%.6f, %.6f)%s%s%s\n", a, v->margin,
                v->point.x, v->point.y, r.in_A ? " [A]" : "", r.in_B ? " [B]" : "", r.in_C ? " [C]" : "");
  }
  return 0;
}
