#pragma once

namespace rrlab {

/// Dawson integral D(x) = exp(-x^2) * int_0^x exp(t^2) dt.
double dawson(double x);

/// Exponential integral E1(x) for x > 0.
double expint_e1(double x);

/// int_0^X D(v) dv with the far tail handled through the 1/(2v) asymptotics.
double dawson_integral(double X);

}  // namespace rrlab
