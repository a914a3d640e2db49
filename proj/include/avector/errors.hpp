#ifndef AVECTOR_ERRORS_HPP
#define AVECTOR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace avec
{

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Fields that do not live on the same lattice, wrong component counts, etc.
class StructuralError : public Error
{
public:
  using Error::Error;
};

// Mathematically undefined request (negative power of a field with a mean, r < 0, ...).
class DomainError : public Error
{
public:
  using Error::Error;
};

class ConfigError : public Error
{
public:
  using Error::Error;
};

class FormatError : public Error
{
public:
  using Error::Error;
};

}  // namespace avec

#endif  // AVECTOR_ERRORS_HPP
