#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace birds {

using UavId = std::uint32_t;
using UserId = std::uint32_t;
using JobId = std::uint64_t;

enum class ErrorKind {
    EnergyExhausted,
    Overload,
    InfeasibleLink,
    EmptyBlock,
    StaleTimestamp,
    InvalidNonce,
    InvalidBlock,
    AlreadyRegistered,
    MalformedRegistration,
    DegenerateEnergyState,
    DivisionDegenerate,
    InvalidParameter,
    NoEligibleCandidate,
    IllegalTransition,
    Parse,
    Io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(Vec3 a, double s) { return {a.x * s, a.y * s, a.z * s}; }
    friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double norm(Vec3 v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }
inline double distance(Vec3 a, Vec3 b) { return norm(a - b); }

}  // namespace birds
