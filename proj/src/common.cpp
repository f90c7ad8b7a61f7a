#include "birds/common.hpp"

namespace birds {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::EnergyExhausted: return "energy-exhausted";
    case ErrorKind::Overload: return "overload";
    case ErrorKind::InfeasibleLink: return "infeasible-link";
    case ErrorKind::EmptyBlock: return "empty-block";
    case ErrorKind::StaleTimestamp: return "stale-timestamp";
    case ErrorKind::InvalidNonce: return "invalid-nonce";
    case ErrorKind::InvalidBlock: return "invalid-block";
    case ErrorKind::AlreadyRegistered: return "already-registered";
    case ErrorKind::MalformedRegistration: return "malformed-registration";
    case ErrorKind::DegenerateEnergyState: return "degenerate-energy-state";
    case ErrorKind::DivisionDegenerate: return "division-degenerate";
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::NoEligibleCandidate: return "no-eligible-candidate";
    case ErrorKind::IllegalTransition: return "illegal-transition";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Io: return "io";
    }
    return "unknown";
}

}  // namespace birds
