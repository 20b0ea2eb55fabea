#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gpick {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// A point (s, p) of C^2; candidate member of the symmetrized bidisk G.
struct GPoint {
    Complex s{};
    Complex p{};

    friend bool operator==(const GPoint&, const GPoint&) = default;
};

using NodeSet = std::vector<GPoint>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// |2 - alpha*s| fell below the pole floor.
class PoleError : public Error {
public:
    using Error::Error;
};

/// Szego denominator vanished (point at or outside the boundary).
class DegenerateDenominatorError : public Error {
public:
    using Error::Error;
};

/// A matrix claimed to be positive semidefinite is not.
class NotPsdError : public Error {
public:
    using Error::Error;
};

/// Gram matrices of a claimed isometric correspondence differ.
class GramMismatchError : public Error {
public:
    using Error::Error;
};

/// The transfer-function resolvent cannot be formed at the requested point.
class SingularResolventError : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent input data (shapes, indices, membership).
class InvalidInputError : public Error {
public:
    using Error::Error;
};

}  // namespace gpick
