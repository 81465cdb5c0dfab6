#pragma once

#include <stdexcept>
#include <string>

namespace pasda::minilang {

struct MiniLangError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SyntaxError : MiniLangError {
  SyntaxError(int line, int col, const std::string& msg)
      : MiniLangError("syntax error at " + std::to_string(line) + ":" + std::to_string(col) +
                      ": " + msg),
        line(line),
        col(col) {}
  int line, col;
};

struct TypeError : MiniLangError {
  TypeError(int line, const std::string& msg)
      : MiniLangError("type error at line " + std::to_string(line) + ": " + msg), line(line) {}
  int line;
};

struct RecursionError : MiniLangError {
  explicit RecursionError(const std::string& msg) : MiniLangError("recursion error: " + msg) {}
};

struct FuelExhausted : MiniLangError {
  FuelExhausted() : MiniLangError("interpreter fuel exhausted") {}
};

}  // namespace pasda::minilang
