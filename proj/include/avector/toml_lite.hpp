#ifndef AVECTOR_TOML_LITE_HPP
#define AVECTOR_TOML_LITE_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace avec::toml
{

//
// The subset of TOML used by avector config files: [section] headers (one level), bare or
// quoted keys, basic strings, integers, floats (including inf/nan), booleans, arrays (may
// span lines) and inline tables. Comments start with #. Dotted keys and dates are not
// supported.
//
struct Value;
using Table = std::map<std::string, Value>;
using Array = std::vector<Value>;

struct Value
{
  enum class Type
  {
    string,
    integer,
    floating,
    boolean,
    array,
    table
  };

  Type type = Type::integer;
  std::string str;
  long long integer = 0;
  double floating = 0.0;
  bool boolean = false;
  std::shared_ptr<Array> array;
  std::shared_ptr<Table> table;

  bool is_number() const { return type == Type::integer || type == Type::floating; }
  double as_number() const { return type == Type::integer ? static_cast<double>(integer) : floating; }
  std::string type_name() const;
};

// Throws FormatError with a line number on malformed input.
Table parse(const std::string &text);

}  // namespace avec::toml

#endif  // AVECTOR_TOML_LITE_HPP
