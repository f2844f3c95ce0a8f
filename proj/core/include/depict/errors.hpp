#ifndef DEPICT_ERRORS_HPP
#define DEPICT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace depict {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& what) : Error("shape mismatch: " + what) {}
};

struct NotSymmetric : Error {
    explicit NotSymmetric(const std::string& what) : Error("not symmetric: " + what) {}
};

struct NotPositiveDefinite : Error {
    explicit NotPositiveDefinite(const std::string& what)
        : Error("not positive definite: " + what) {}
};

struct RankDeficient : Error {
    explicit RankDeficient(const std::string& what) : Error("rank deficient: " + what) {}
};

struct NoConvergence : Error {
    explicit NoConvergence(const std::string& what) : Error("no convergence: " + what) {}
};

struct NonFinite : Error {
    explicit NonFinite(const std::string& what) : Error("non-finite value: " + what) {}
};

struct ResourceCap : Error {
    explicit ResourceCap(const std::string& what) : Error("resource cap exceeded: " + what) {}
};

struct ConfigInvalid : Error {
    explicit ConfigInvalid(const std::string& what) : Error("invalid config: " + what) {}
};

struct CountMismatch : Error {
    explicit CountMismatch(const std::string& what) : Error("count mismatch: " + what) {}
};

struct LabelOutOfRange : Error {
    explicit LabelOutOfRange(const std::string& what) : Error("label out of range: " + what) {}
};

struct Divergence : Error {
    explicit Divergence(const std::string& what) : Error("training diverged: " + what) {}
};

struct IoError : Error {
    explicit IoError(const std::string& what) : Error("io error: " + what) {}
};

struct BadMagic : Error {
    explicit BadMagic(const std::string& what) : Error("bad magic: " + what) {}
};

struct VersionMismatch : Error {
    explicit VersionMismatch(const std::string& what) : Error("version mismatch: " + what) {}
};

struct ShapeCorrupt : Error {
    explicit ShapeCorrupt(const std::string& what) : Error("corrupt file: " + what) {}
};

}  // namespace depict

#endif
