#pragma once

#include <stdexcept>
#include <string>

namespace subshift {

/** Process exit codes shared by the library error types, the CLI and the test drivers. */
enum class ExitCode : int {
  ok = 0,
  config = 2,
  infeasible_schedule = 3,
  depth_limit = 4,
  certificate_read = 5,
  certificate_version = 6,
  certificate_invariant = 7,
  suite_tilings = 10,
  suite_schedule = 11,
  suite_blocks = 12,
  suite_return_times = 13,
  suite_density = 14,
  suite_mdim = 15,
};

/** Invalid run configuration: bad dimensions, bad flags, window cap exceeded. */
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** No copy count can satisfy a required coverage fraction (inconsistent schedule). */
class infeasible_schedule_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** Requested precision or level is beyond the constructible depth. */
class depth_limit_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** A coordinate's box is narrower than the scale threshold the caller asked about. */
class thin_box_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** What a certificate load rejected. io/parse are structural, the rest are semantic. */
enum class CertFault { io, parse, version, divisibility, schedule, consistency };

const char* cert_fault_name(CertFault f);

class certificate_error : public std::runtime_error {
 public:
  certificate_error(CertFault fault, const std::string& msg)
      : std::runtime_error(std::string(cert_fault_name(fault)) + ": " + msg), fault_(fault) {}

  CertFault fault() const { return fault_; }

  ExitCode exit_code() const {
    switch (fault_) {
      case CertFault::io:
      case CertFault::parse:
        return ExitCode::certificate_read;
      case CertFault::version:
        return ExitCode::certificate_version;
      default:
        return ExitCode::certificate_invariant;
    }
  }

 private:
  CertFault fault_;
};

inline const char* cert_fault_name(CertFault f) {
  switch (f) {
    case CertFault::io: return "certificate io";
    case CertFault::parse: return "certificate parse";
    case CertFault::version: return "certificate version";
    case CertFault::divisibility: return "certificate divisibility";
    case CertFault::schedule: return "certificate schedule";
    case CertFault::consistency: return "certificate consistency";
  }
  return "certificate";
}

}  // namespace subshift
