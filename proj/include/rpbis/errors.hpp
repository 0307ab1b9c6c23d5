/* errors.hpp -- error taxonomy shared by the whole library */
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rpbis {

enum class ErrKind {
    SyntaxError,
    SumNotOne,
    NegativeProb,
    ProbOutOfRange,
    DuplicateTransition,
    UnknownState,
    IoError,
    Internal,
};

// Position of a parse error in the source text, 1-based.
struct SourceSpan {
    unsigned line = 0;
    unsigned column = 0;
};

class Error : public std::runtime_error {
  public:
    Error(ErrKind kind, std::string msg)
        : std::runtime_error(std::move(msg)), kind_(kind) {}
    Error(ErrKind kind, std::string msg, SourceSpan span)
        : std::runtime_error(std::to_string(span.line) + ":" +
                             std::to_string(span.column) + ": " + std::move(msg)),
          kind_(kind), span_(span), has_span_(true) {}

    ErrKind kind() const { return kind_; }
    bool has_span() const { return has_span_; }
    SourceSpan span() const { return span_; }

  private:
    ErrKind kind_;
    SourceSpan span_{};
    bool has_span_ = false;
};

const char* err_kind_name(ErrKind k);

} // namespace rpbis
