#pragma once

#include <stdexcept>
#include <string>

namespace cytodiff {

// Error taxonomy shared by the library and the CLI. The CLI maps each
// category to a distinct exit code.
class Error : public std::runtime_error {
 public:
  enum class Category { config, data, numerical, io };

  Error(Category cat, std::string msg)
      : std::runtime_error(std::move(msg)), category_(cat) {}

  Category category() const noexcept { return category_; }

  static const char* category_name(Category c) {
    switch (c) {
      case Category::config: return "config";
      case Category::data: return "data";
      case Category::numerical: return "numerical";
      case Category::io: return "io";
    }
    return "unknown";
  }

 private:
  Category category_;
};

struct ConfigError : Error {
  explicit ConfigError(std::string msg) : Error(Category::config, std::move(msg)) {}
};
struct DataError : Error {
  explicit DataError(std::string msg) : Error(Category::data, std::move(msg)) {}
};
struct NumericalError : Error {
  explicit NumericalError(std::string msg) : Error(Category::numerical, std::move(msg)) {}
};
struct IoError : Error {
  explicit IoError(std::string msg) : Error(Category::io, std::move(msg)) {}
};

}  // namespace cytodiff
