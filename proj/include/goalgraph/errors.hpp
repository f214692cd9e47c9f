#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace goalgraph {

// Half-open byte range into the (quote-normalized) source text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const Span&, const Span&) = default;
};

// Base for all structured failures. `code` is a stable machine-readable
// name ("SyntaxError", "CassetteMiss", ...); `what()` is the human message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class ParseError : public Error {
 public:
  ParseError(std::string code, const std::string& message, Span span)
      : Error(std::move(code), message), span_(span) {}

  Span span() const noexcept { return span_; }

 private:
  Span span_;
};

class UnresolvedReferenceError : public Error {
 public:
  explicit UnresolvedReferenceError(std::vector<std::string> ids)
      : Error("UnresolvedReference", format(ids)), ids_(std::move(ids)) {}

  const std::vector<std::string>& ids() const noexcept { return ids_; }

 private:
  static std::string format(const std::vector<std::string>& ids) {
    std::string msg = "unresolved identifiers:";
    for (const auto& id : ids) msg += " " + id;
    return msg;
  }

  std::vector<std::string> ids_;
};

class LoweringError : public Error {
 public:
  LoweringError(std::string code, const std::string& message, std::string goal_id = {})
      : Error(std::move(code), message), goal_id_(std::move(goal_id)) {}

  const std::string& goal_id() const noexcept { return goal_id_; }

 private:
  std::string goal_id_;
};

class CorpusError : public Error {
 public:
  CorpusError(std::string code, const std::string& message, int line = 0)
      : Error(std::move(code), message), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_ = 0;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

class GatewayError : public Error {
 public:
  GatewayError(std::string code, const std::string& message, int status = 0)
      : Error(std::move(code), message), status_(status) {}

  int status() const noexcept { return status_; }

 private:
  int status_ = 0;
};

// Non-fatal finding (naming lint, step renumbering, ...).
struct Warning {
  std::string code;
  std::string subject;
  std::string message;

  friend bool operator==(const Warning&, const Warning&) = default;
};

}  // namespace goalgraph
