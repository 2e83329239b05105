#include "fdo/errors.hpp"

namespace fdo {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::DuplicatePidConflict: return "DuplicatePidConflict";
        case ErrorCode::InvalidPidSyntax: return "InvalidPidSyntax";
        case ErrorCode::UnknownAttributePid: return "UnknownAttributePid";
        case ErrorCode::MalformedSnapshot: return "MalformedSnapshot";
        case ErrorCode::NotFound: return "NotFound";
        case ErrorCode::RemoteUnavailable: return "RemoteUnavailable";
        case ErrorCode::MalformedRecordDocument: return "MalformedRecordDocument";
        case ErrorCode::ValidationFailed: return "ValidationFailed";
        case ErrorCode::UnknownProfile: return "UnknownProfile";
        case ErrorCode::AlreadyRegistered: return "AlreadyRegistered";
        case ErrorCode::DuplicateOperationName: return "DuplicateOperationName";
        case ErrorCode::InvalidCriterion: return "InvalidCriterion";
        case ErrorCode::MissingAccessKey: return "MissingAccessKey";
        case ErrorCode::FetchFailed: return "FetchFailed";
        case ErrorCode::NotApplicable: return "NotApplicable";
        case ErrorCode::UnknownNode: return "UnknownNode";
    }
    return "UnknownError";
}

}  // namespace fdo
