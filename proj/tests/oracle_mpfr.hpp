#pragma once

// Arbitrary-precision reference implementations (MPFR, 384-bit) used only by
// tests. Both evaluate the defining series directly — no Kummer transform, no
// compensated tricks — so they are independent of the production code paths.

namespace schurmix::oracle {

double hyp1f1(double b, double c, double w);
double phi2(double b, double b2, double c, double w, double z);

}  // namespace schurmix::oracle
