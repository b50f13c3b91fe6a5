// SPDX-License-Identifier: Apache-2.0

#include "cszego/error.hpp"

namespace cszego {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::UnsupportedParameter: return "unsupported-parameter";
    case ErrorKind::UnboundedCurve: return "unbounded-curve";
    case ErrorKind::CapacityUnknown: return "capacity-unknown";
    case ErrorKind::PoleOnCurve: return "pole-on-curve";
    case ErrorKind::Singular: return "singular-evaluation";
    case ErrorKind::SideMismatch: return "side-mismatch";
    case ErrorKind::NoRiemannMap: return "no-riemann-map";
    case ErrorKind::Parity: return "parity";
    case ErrorKind::Frame: return "frame";
    case ErrorKind::NonConvergence: return "non-convergence";
    case ErrorKind::Conditioning: return "conditioning";
    case ErrorKind::InsufficientData: return "insufficient-data";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace cszego
