#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tumbug {

enum class ErrorCode {
  UnknownParent,
  ParentNotContainer,
  DuplicateId,
  InvalidId,
  UnknownEndpoint,
  UnknownMember,
  ContainmentCycle,
  InvalidPayload,
  InvalidValue,
  InvalidBinding,
  IllegalAttributeHost,
  ConflictingDuplicate,
  UnknownOwner,
  UnboundSlots,
  NoEquationForSlot,
  DivisionByZero,
  OutOfDomain,
  UnknownKind,
  InvalidDiagram,
  MissingRole,
  UnsupportedOperator,
  EmptyProgram,
  SchemaMismatch,
  EmptyLexicon,
  UnknownModalRow,
  InvalidTable,
  InvalidSchedule,
  Parse,
};

inline std::string_view to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::UnknownParent: return "UnknownParent";
    case ErrorCode::ParentNotContainer: return "ParentNotContainer";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::InvalidId: return "InvalidId";
    case ErrorCode::UnknownEndpoint: return "UnknownEndpoint";
    case ErrorCode::UnknownMember: return "UnknownMember";
    case ErrorCode::ContainmentCycle: return "ContainmentCycle";
    case ErrorCode::InvalidPayload: return "InvalidPayload";
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::InvalidBinding: return "InvalidBinding";
    case ErrorCode::IllegalAttributeHost: return "IllegalAttributeHost";
    case ErrorCode::ConflictingDuplicate: return "ConflictingDuplicate";
    case ErrorCode::UnknownOwner: return "UnknownOwner";
    case ErrorCode::UnboundSlots: return "UnboundSlots";
    case ErrorCode::NoEquationForSlot: return "NoEquationForSlot";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::UnknownKind: return "UnknownKind";
    case ErrorCode::InvalidDiagram: return "InvalidDiagram";
    case ErrorCode::MissingRole: return "MissingRole";
    case ErrorCode::UnsupportedOperator: return "UnsupportedOperator";
    case ErrorCode::EmptyProgram: return "EmptyProgram";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::EmptyLexicon: return "EmptyLexicon";
    case ErrorCode::UnknownModalRow: return "UnknownModalRow";
    case ErrorCode::InvalidTable: return "InvalidTable";
    case ErrorCode::InvalidSchedule: return "InvalidSchedule";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tumbug
