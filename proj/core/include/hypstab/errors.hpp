#pragma once

#include <stdexcept>
#include <string>

namespace hypstab {

// Base for everything thrown by this library. Callers that want a single
// catch point use this; tests usually catch the concrete type.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct SingularMatrix : Error {
    explicit SingularMatrix(const std::string& what) : Error(what) {}
};

struct NotDiagonalizable : Error {
    explicit NotDiagonalizable(const std::string& what) : Error(what) {}
};

struct ComplexSpectrum : Error {
    explicit ComplexSpectrum(const std::string& what) : Error(what) {}
};

struct ZeroEigenvalue : Error {
    explicit ZeroEigenvalue(const std::string& what) : Error(what) {}
};

struct NotSymmetric : Error {
    explicit NotSymmetric(const std::string& what) : Error(what) {}
};

struct NonConvergence : Error {
    explicit NonConvergence(const std::string& what) : Error(what) {}
};

struct InvalidValue : Error {
    explicit InvalidValue(const std::string& what) : Error(what) {}
};

// A prescribed feedback coefficient multiplies a state the controller
// cannot observe at that end.
struct MaskViolation : Error {
    explicit MaskViolation(const std::string& what) : Error(what) {}
};

// The boundary conditions do not determine the incoming characteristics.
struct IllPosedBoundary : Error {
    explicit IllPosedBoundary(const std::string& what) : Error(what) {}
};

struct NotApplicable : Error {
    explicit NotApplicable(const std::string& what) : Error(what) {}
};

struct InsufficientData : Error {
    explicit InsufficientData(const std::string& what) : Error(what) {}
};

struct DegenerateDenominator : Error {
    explicit DegenerateDenominator(const std::string& what) : Error(what) {}
};

struct EmptyRange : Error {
    explicit EmptyRange(const std::string& what) : Error(what) {}
};

struct Supercritical : Error {
    explicit Supercritical(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& what)
        : Error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

struct UnknownParameterPath : Error {
    explicit UnknownParameterPath(const std::string& what) : Error(what) {}
};

} // namespace hypstab
