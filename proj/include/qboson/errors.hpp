#pragma once

#include <stdexcept>
#include <string>

namespace qb {

enum class ErrorKind {
  Parse,
  Validation,
  DegreeCapExceeded,
  SideMismatch,
  NotIntegrable,
  NotFiniteDimensional,
  ReconstructionFailure,
  CertificateFailure,
  Internal,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

inline Error parse_error(const std::string& m) { return Error(ErrorKind::Parse, m); }
inline Error validation_error(const std::string& m) { return Error(ErrorKind::Validation, m); }
inline Error degree_cap_error(const std::string& m) { return Error(ErrorKind::DegreeCapExceeded, m); }
inline Error side_mismatch(const std::string& m) { return Error(ErrorKind::SideMismatch, m); }
inline Error internal_error(const std::string& m) { return Error(ErrorKind::Internal, m); }

}  // namespace qb
