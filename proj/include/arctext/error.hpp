// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace arctext {

enum class ErrorCode {
  // graph construction
  EmptyNodeName,
  DuplicateNodeName,
  UnknownEdgeEndpoint,
  SelfLoop,
  DuplicateEdge,
  CycleDetected,
  InvalidSpec,
  // structural validation
  NoNodes,
  AmbiguousSource,
  AmbiguousSink,
  // canonical ordering
  BrokenPath,
  PathExplosion,
  UnreachableNode,
  // text codec
  MalformedLine,
  UnclassifiableLine,
  DuplicateId,
  NonContiguousIds,
  DanglingConnect,
  MultipleSinks,
  EmptyInput,
  // shape arithmetic
  NonPositiveOutput,
  // vectorizer
  UnknownToken,
  // file I/O
  FileNotFound,
  SyntaxError,
  SchemaError,
  IoError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers (and the CLI) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace arctext
