#include "avector/toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

#include "avector/errors.hpp"

namespace avec::toml
{

std::string Value::type_name() const
{
  switch (type)
  {
  case Type::string:
    return "string";
  case Type::integer:
    return "integer";
  case Type::floating:
    return "float";
  case Type::boolean:
    return "boolean";
  case Type::array:
    return "array";
  case Type::table:
    return "table";
  }
  return "?";
}

namespace
{

class Parser
{
public:
  explicit Parser(const std::string &text) : s_(text) {}

  Table run()
  {
    Table root;
    Table *current = &root;
    while (true)
    {
      skip_blank_lines();
      if (eof())
      {
        break;
      }
      if (peek() == '[')
      {
        ++pos_;
        skip_ws();
        const std::string name = key();
        skip_ws();
        expect(']');
        end_of_line();
        if (root.count(name))
        {
          fail("duplicate section [" + name + "]");
        }
        Value v;
        v.type = Value::Type::table;
        v.table = std::make_shared<Table>();
        current = root.emplace(name, v).first->second.table.get();
        continue;
      }
      const std::string k = key();
      skip_ws();
      expect('=');
      skip_ws();
      Value v = value();
      end_of_line();
      if (current->count(k))
      {
        fail("duplicate key '" + k + "'");
      }
      current->emplace(k, std::move(v));
    }
    return root;
  }

private:
  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return eof() ? '\0' : s_[pos_]; }

  [[noreturn]] void fail(const std::string &msg) const
  {
    std::size_t line = 1;
    for (std::size_t i = 0; i < pos_ && i < s_.size(); ++i)
    {
      line += s_[i] == '\n';
    }
    throw FormatError("config line " + std::to_string(line) + ": " + msg);
  }

  void expect(char c)
  {
    if (peek() != c)
    {
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  void skip_ws()
  {
    while (!eof() && (peek() == ' ' || peek() == '\t'))
    {
      ++pos_;
    }
  }

  void skip_comment()
  {
    if (peek() == '#')
    {
      while (!eof() && peek() != '\n')
      {
        ++pos_;
      }
    }
  }

  // Whitespace, comments and newlines (inside arrays and between statements).
  void skip_blank_lines()
  {
    while (!eof())
    {
      skip_ws();
      skip_comment();
      if (peek() == '\n' || peek() == '\r')
      {
        ++pos_;
        continue;
      }
      break;
    }
  }

  void end_of_line()
  {
    skip_ws();
    skip_comment();
    if (peek() == '\r')
    {
      ++pos_;
    }
    if (!eof() && peek() != '\n')
    {
      fail("unexpected text after value");
    }
  }

  std::string key()
  {
    if (peek() == '"')
    {
      return basic_string();
    }
    const std::size_t start = pos_;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-'))
    {
      ++pos_;
    }
    if (pos_ == start)
    {
      fail("expected a key");
    }
    return s_.substr(start, pos_ - start);
  }

  std::string basic_string()
  {
    expect('"');
    std::string out;
    while (true)
    {
      if (eof() || peek() == '\n')
      {
        fail("unterminated string");
      }
      char c = s_[pos_++];
      if (c == '"')
      {
        break;
      }
      if (c == '\\')
      {
        if (eof())
        {
          fail("unterminated string");
        }
        const char e = s_[pos_++];
        switch (e)
        {
        case 'n':
          out += '\n';
          break;
        case 't':
          out += '\t';
          break;
        case '"':
          out += '"';
          break;
        case '\\':
          out += '\\';
          break;
        default:
          fail(std::string("unsupported escape \\") + e);
        }
        continue;
      }
      out += c;
    }
    return out;
  }

  Value value()
  {
    Value v;
    const char c = peek();
    if (c == '"')
    {
      v.type = Value::Type::string;
      v.str = basic_string();
      return v;
    }
    if (c == '[')
    {
      ++pos_;
      v.type = Value::Type::array;
      v.array = std::make_shared<Array>();
      while (true)
      {
        skip_blank_lines();
        if (peek() == ']')
        {
          ++pos_;
          break;
        }
        v.array->push_back(value());
        skip_blank_lines();
        if (peek() == ',')
        {
          ++pos_;
          continue;
        }
        skip_blank_lines();
        expect(']');
        break;
      }
      return v;
    }
    if (c == '{')
    {
      ++pos_;
      v.type = Value::Type::table;
      v.table = std::make_shared<Table>();
      skip_ws();
      if (peek() == '}')
      {
        ++pos_;
        return v;
      }
      while (true)
      {
        skip_ws();
        const std::string k = key();
        skip_ws();
        expect('=');
        skip_ws();
        if (v.table->count(k))
        {
          fail("duplicate key '" + k + "'");
        }
        v.table->emplace(k, value());
        skip_ws();
        if (peek() == ',')
        {
          ++pos_;
          continue;
        }
        expect('}');
        break;
      }
      return v;
    }
    const std::size_t start = pos_;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '+' ||
                      peek() == '-' || peek() == '.' || peek() == '_'))
    {
      ++pos_;
    }
    std::string tok = s_.substr(start, pos_ - start);
    if (tok.empty())
    {
      fail("expected a value");
    }
    if (tok == "true" || tok == "false")
    {
      v.type = Value::Type::boolean;
      v.boolean = tok == "true";
      return v;
    }
    std::string digits;
    for (char ch : tok)
    {
      if (ch != '_')
      {
        digits += ch;
      }
    }
    std::string body = digits;
    double sign = 1.0;
    if (!body.empty() && (body[0] == '+' || body[0] == '-'))
    {
      sign = body[0] == '-' ? -1.0 : 1.0;
      body = body.substr(1);
    }
    if (body == "inf" || body == "nan")
    {
      v.type = Value::Type::floating;
      v.floating = body == "inf" ? sign * std::numeric_limits<double>::infinity()
                                 : std::numeric_limits<double>::quiet_NaN();
      return v;
    }
    const bool is_float = digits.find_first_of(".eE") != std::string::npos;
    const char *b = digits.data() + (digits[0] == '+' ? 1 : 0);
    const char *e = digits.data() + digits.size();
    if (is_float)
    {
      v.type = Value::Type::floating;
      auto r = std::from_chars(b, e, v.floating);
      if (r.ec != std::errc() || r.ptr != e)
      {
        fail("malformed number '" + tok + "'");
      }
    }
    else
    {
      v.type = Value::Type::integer;
      auto r = std::from_chars(b, e, v.integer);
      if (r.ec != std::errc() || r.ptr != e)
      {
        fail("malformed value '" + tok + "'");
      }
    }
    return v;
  }

  const std::string &s_;
  std::size_t pos_ = 0;
};

}  // namespace

Table parse(const std::string &text) { return Parser(text).run(); }

}  // namespace avec::toml
