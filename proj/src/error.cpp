#include "mdawg/error.hpp"

namespace mdawg {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::RejectedSymbol: return "RejectedSymbol";
    case ErrorKind::InvalidUtf8: return "InvalidUtf8";
    case ErrorKind::InvalidCombination: return "InvalidCombination";
    case ErrorKind::UnknownCode: return "UnknownCode";
    case ErrorKind::AmbiguousType: return "AmbiguousType";
    case ErrorKind::ReservedSymbol: return "ReservedSymbol";
    case ErrorKind::MalformedEntry: return "MalformedEntry";
    case ErrorKind::MalformedFeatures: return "MalformedFeatures";
    case ErrorKind::InvalidCodingTable: return "InvalidCodingTable";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::BadMagic: return "BadMagic";
    case ErrorKind::ChecksumMismatch: return "ChecksumMismatch";
    case ErrorKind::VersionMismatch: return "VersionMismatch";
    case ErrorKind::CodingTableMismatch: return "CodingTableMismatch";
    case ErrorKind::CorruptImage: return "CorruptImage";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace mdawg
