#pragma once

#include <stdexcept>
#include <string>

namespace spatk {

// Process exit codes used by the CLI. Library errors carry the code they
// map to so the tool layer stays a thin switch.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitParse = 3,
  kExitInconsistentInput = 4,
  kExitDomain = 5,
};

class Error : public std::runtime_error {
 public:
  Error(int exit_code, const std::string& what)
      : std::runtime_error(what), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

/// Bad argument values, degenerate inputs, numeric domain violations.
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(kExitDomain, what) {}
};

/// Pattern lacks the points an estimator needs.
class EmptyPatternError : public InvalidArgument {
 public:
  explicit EmptyPatternError(const std::string& what) : InvalidArgument(what) {}
};

/// Index outside a container's valid range.
class OutOfRangeError : public InvalidArgument {
 public:
  explicit OutOfRangeError(const std::string& what) : InvalidArgument(what) {}
};

/// Cold-start clustering with fewer distinct points than clusters.
class InsufficientPointsError : public InvalidArgument {
 public:
  explicit InsufficientPointsError(const std::string& what) : InvalidArgument(what) {}
};

/// Clustering requested for a class with no members.
class EmptyClassError : public InvalidArgument {
 public:
  explicit EmptyClassError(const std::string& what) : InvalidArgument(what) {}
};

/// Two annotations rasterize to the same pixel; masks cannot be disjoint.
class CoincidentPointsError : public InvalidArgument {
 public:
  explicit CoincidentPointsError(const std::string& what) : InvalidArgument(what) {}
};

/// Two inputs that must describe the same data do not agree.
class InconsistentInput : public Error {
 public:
  explicit InconsistentInput(const std::string& what)
      : Error(kExitInconsistentInput, what) {}
};

/// Warm-start model does not match the feature table it is applied to.
class InconsistentModelError : public InconsistentInput {
 public:
  explicit InconsistentModelError(const std::string& what) : InconsistentInput(what) {}
};

/// Malformed file contents. Carries a 1-based line number when known.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, long line = 0)
      : Error(kExitParse, line > 0 ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}
  long line() const noexcept { return line_; }

 private:
  long line_;
};

/// File carries an unsupported format version.
class VersionError : public ParseError {
 public:
  explicit VersionError(const std::string& what) : ParseError(what) {}
};

}  // namespace spatk
