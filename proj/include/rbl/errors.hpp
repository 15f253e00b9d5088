#pragma once

#include <stdexcept>
#include <string>

namespace rbl {

/// A formula stepped outside the sublanguage an operation supports.
class LanguageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidWorld : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

class InvalidState : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

class MissingMetaVar : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class MissingAtom : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// The product table does not admit residuals.
class NotResiduated : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

class SizeLimit : public std::length_error {
public:
  using std::length_error::length_error;
};

class MalformedProof : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace rbl
