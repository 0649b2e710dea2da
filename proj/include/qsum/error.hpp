#pragma once

#include <stdexcept>
#include <string>

namespace qsum {

/// Base of every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Configuration and input-file problems. The CLI maps these to exit code 1.
class ConfigError : public Error {
public:
    using Error::Error;
};

class LexiconMissing : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class TreeParseError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class TreeValidationError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class CorpusError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class BackendUnavailable : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

// Outcomes where the pipeline ran but had nothing to say. Exit code 2.
class NoAnswerError : public Error {
public:
    using Error::Error;
};

class EmptyKeywords : public NoAnswerError {
public:
    using NoAnswerError::NoAnswerError;
};

class NoResults : public NoAnswerError {
public:
    using NoAnswerError::NoAnswerError;
};

class NoAnswer : public NoAnswerError {
public:
    using NoAnswerError::NoAnswerError;
};

class EmptyDocument : public NoAnswerError {
public:
    using NoAnswerError::NoAnswerError;
};

class AllDocumentsFaulty : public NoAnswerError {
public:
    using NoAnswerError::NoAnswerError;
};

class EmptySummary : public NoAnswerError {
public:
    using NoAnswerError::NoAnswerError;
};

class EmptyScores : public DomainError {
public:
    using DomainError::DomainError;
};

class NoUsableLatencies : public DomainError {
public:
    using DomainError::DomainError;
};

} // namespace qsum
