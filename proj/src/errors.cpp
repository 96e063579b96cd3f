#include "cospan/errors.hpp"

#include <utility>

namespace cospan {

SyntaxError::SyntaxError(std::size_t line, std::size_t column,
                         std::string token, const std::string &reason)
    : Error("syntax error at " + std::to_string(line) + ":" +
            std::to_string(column) + " near '" + token + "': " + reason),
      line_(line),
      column_(column),
      token_(std::move(token)) {}

UnboundGenerator::UnboundGenerator(std::string name)
    : Error("UnboundGenerator: no generator named '" + name + "'"),
      name_(std::move(name)) {}

BoundaryMismatch::BoundaryMismatch(std::string expected, std::string found,
                                   std::string subexpression)
    : Error("BoundaryMismatch: expected " + expected + " but found " + found +
            " in '" + subexpression + "'"),
      expected_(std::move(expected)),
      found_(std::move(found)),
      subexpression_(std::move(subexpression)) {}

UnboundRate::UnboundRate(std::string name)
    : Error("UnboundRate: no value bound for rate parameter '" + name + "'"),
      name_(std::move(name)) {}

NonFiniteState::NonFiniteState(double time)
    : Error("NonFiniteState: state became non-finite at t=" +
            std::to_string(time)),
      time_(time) {}

ParseError::ParseError(std::size_t line, const std::string &reason)
    : Error("line " + std::to_string(line) + ": " + reason), line_(line) {}

ValidationError::ValidationError(std::string entity, const std::string &reason)
    : Error(entity + ": " + reason), entity_(std::move(entity)) {}

}  // namespace cospan
