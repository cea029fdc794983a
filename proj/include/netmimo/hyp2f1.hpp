#pragma once

namespace netmimo {

// Gauss hypergeometric function for non-positive real argument. Supports the
// general case while |z/(z-1)| stays away from 1, and the c = b + 1 pattern
// (b < 0) for any z <= 0 via an upper-incomplete-beta reduction.
double hyp2f1(double a, double b, double c, double z);

// 2F1(a, b; b+1; z) - 1 for z <= 0, b in (-1, 0), computed without the
// cancellation that a plain subtraction would incur near z = 0.
double hyp2f1_ratio_m1(double a, double b, double z);

}  // namespace netmimo
