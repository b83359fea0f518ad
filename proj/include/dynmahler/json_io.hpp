#pragma once

#include <json.hpp>

#include "dynmahler/bop.hpp"
#include "dynmahler/commuting.hpp"
#include "dynmahler/dynamics.hpp"
#include "dynmahler/mahler.hpp"

namespace dynmahler {

using Json = nlohmann::ordered_json;

// Polynomials: arrays of coefficient strings, ascending by degree. Each
// string is accepted by parse_complex_literal / parse_rational_literal.
Json as_json(const IntPoly& p);
Json as_json(const RationalPoly& p);
Json as_json(const ComplexPoly& p);

// Bivariate: {"degx", "degy", "coeffs"} with coeffs[i][j] the x^i y^j entry.
Json as_json(const IntBivarPoly& p);
Json as_json(const ComplexBivarPoly& p);

Json as_json(const PotentialResult& r);
Json as_json(const MeasureEstimate& m, Json params = Json::object());
Json as_json(const MeasureSample& s, const DynamicalSystem& sys);
Json as_json(const RationalOrbitResult& r);
Json as_json(const KroneckerResult& r);
Json as_json(const ZeroMeasureReport& r, Json params = Json::object());
Json as_json(const RootOfUnity& u);

template <typename Scalar>
Json as_json(const CommutingReport<Scalar>& r);

template <typename Scalar>
Json as_json(const OrderSequence<Scalar>& s);

std::string to_string(OrbitClass c);
std::string to_string(Certificate c);
std::string to_string(OrderFlag f);
std::string to_string(MultiplierClass k);

}  // namespace dynmahler
