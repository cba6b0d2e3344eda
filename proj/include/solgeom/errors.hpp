#pragma once

#include <stdexcept>
#include <string>

namespace solgeom {

// Base of every error raised by the library.
class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BasePointMismatch : public GeometryError {
public:
    BasePointMismatch() : GeometryError("tangent vectors live at different base points") {}
};

class DegeneratePlane : public GeometryError {
public:
    using GeometryError::GeometryError;
};

class NonFiniteValue : public GeometryError {
public:
    using GeometryError::GeometryError;
};

/// The parametrization fails to be an immersion at the sampled point.
class DegenerateImmersion : public GeometryError {
public:
    using GeometryError::GeometryError;
};

/// |grad f| is below the adapted-frame threshold.
class CmcDegenerate : public GeometryError {
public:
    using GeometryError::GeometryError;
};

class DomainError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

class RootNotBracketed : public GeometryError {
public:
    using GeometryError::GeometryError;
};

class ProfileMismatch : public GeometryError {
public:
    using GeometryError::GeometryError;
};

}  // namespace solgeom
