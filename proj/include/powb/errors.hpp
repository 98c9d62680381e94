#ifndef POWB_ERRORS_HPP
#define POWB_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace powb {

// Exit-code buckets used by the CLI: 1 = assertion/verification failure,
// 2 = bad input, 3 = budget.
enum class ErrorCode : int {
  cycle_detected = 2,
  unknown_element = 2,
  not_a_substructure = 2,
  disagreement = 2,
  precondition_failed = 2,
  allocation_mismatch = 2,
  not_monotone = 2,
  not_a_function_graph = 2,
  unbound_variable = 2,
  parse_error = 2,
  not_found = 1,
  table_violation = 1,
  internal = 1,
  budget_exceeded = 3,
  spare_pool_exhausted = 3,
  depth_exceeded = 3,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }
  int exit_code() const { return static_cast<int>(code_); }

 private:
  ErrorCode code_;
};

class CycleDetected : public Error {
 public:
  explicit CycleDetected(std::vector<std::uint32_t> cycle, const std::string& what)
      : Error(ErrorCode::cycle_detected, what), cycle_(std::move(cycle)) {}
  const std::vector<std::uint32_t>& cycle() const { return cycle_; }

 private:
  std::vector<std::uint32_t> cycle_;
};

class UnknownElement : public Error {
 public:
  explicit UnknownElement(std::uint32_t id)
      : Error(ErrorCode::unknown_element, "unknown element id " + std::to_string(id)), id_(id) {}
  std::uint32_t id() const { return id_; }

 private:
  std::uint32_t id_;
};

class NotASubstructure : public Error {
 public:
  explicit NotASubstructure(const std::string& what) : Error(ErrorCode::not_a_substructure, what) {}
};

class Disagreement : public Error {
 public:
  Disagreement(std::uint32_t a, std::uint32_t b, const std::string& what)
      : Error(ErrorCode::disagreement, what), a_(a), b_(b) {}
  std::uint32_t a() const { return a_; }
  std::uint32_t b() const { return b_; }

 private:
  std::uint32_t a_, b_;
};

class PreconditionFailed : public Error {
 public:
  explicit PreconditionFailed(const std::string& clause)
      : Error(ErrorCode::precondition_failed, "precondition failed: " + clause), clause_(clause) {}
  const std::string& clause() const { return clause_; }

 private:
  std::string clause_;
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what) : Error(ErrorCode::budget_exceeded, what) {}
};

class AllocationMismatch : public Error {
 public:
  explicit AllocationMismatch(const std::string& what) : Error(ErrorCode::allocation_mismatch, what) {}
};

class SparePoolExhausted : public Error {
 public:
  explicit SparePoolExhausted(const std::string& what) : Error(ErrorCode::spare_pool_exhausted, what) {}
};

class DepthExceeded : public Error {
 public:
  explicit DepthExceeded(const std::string& what) : Error(ErrorCode::depth_exceeded, what) {}
};

class NotMonotone : public Error {
 public:
  NotMonotone(std::uint32_t x, std::uint32_t y)
      : Error(ErrorCode::not_monotone,
              "map not monotone at " + std::to_string(x) + " < " + std::to_string(y)),
        x_(x), y_(y) {}
  std::uint32_t x() const { return x_; }
  std::uint32_t y() const { return y_; }

 private:
  std::uint32_t x_, y_;
};

class NotAFunctionGraph : public Error {
 public:
  explicit NotAFunctionGraph(std::uint32_t x)
      : Error(ErrorCode::not_a_function_graph, "no unique value at " + std::to_string(x)), x_(x) {}
  std::uint32_t x() const { return x_; }

 private:
  std::uint32_t x_;
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(const std::string& name)
      : Error(ErrorCode::unbound_variable, "unbound variable " + name) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorCode::parse_error, what) {}
};

class NotFound : public Error {
 public:
  explicit NotFound(const std::string& what) : Error(ErrorCode::not_found, what) {}
};

class TableViolation : public Error {
 public:
  TableViolation(int case_id, const std::string& what)
      : Error(ErrorCode::table_violation, what), case_id_(case_id) {}
  int case_id() const { return case_id_; }

 private:
  int case_id_;
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error(ErrorCode::internal, what) {}
};

}  // namespace powb

#endif
