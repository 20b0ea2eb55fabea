#pragma once

#include <json.hpp>

#include "gpick/corona.hpp"
#include "gpick/interpolation.hpp"
#include "gpick/kernels.hpp"
#include "gpick/realization.hpp"

// JSON conventions: complex numbers are [re, im]; points are [s, p]; matrices
// are dense arrays of rows. Where a matrix is expected, a bare complex number
// is accepted as a 1 x 1 matrix. Parse failures raise InvalidInputError.
namespace gpick::io {

using Json = nlohmann::ordered_json;

Json to_json(Complex z);
Json to_json(const GPoint& point);
Json to_json(const CMatrix& m);
Json to_json(const NodeSet& nodes);
Json to_json(const std::vector<Complex>& values);
Json to_json(const KernelSample& sample);
Json to_json(const CPCertificate& cert);
Json to_json(const Colligation& col);
Json to_json(const ScreenReport& report);
Json to_json(const AdmissibilityReport& report);
Json to_json(const FeasibilityResult& result);
Json to_json(const SolveReport& report);
Json to_json(const DivisionReport& report);

Complex complex_from(const Json& j);
GPoint point_from(const Json& j);
CMatrix matrix_from(const Json& j);
NodeSet nodes_from(const Json& j);
std::vector<Complex> complex_list_from(const Json& j);
KernelSample kernel_sample_from(const Json& j);
CPCertificate certificate_from(const Json& j);
Colligation colligation_from(const Json& j);
InterpolationProblem interpolation_problem_from(const Json& j);
DivisionProblem division_problem_from(const Json& j);

}  // namespace gpick::io
