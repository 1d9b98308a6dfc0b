#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace surfmmp {

struct ExampleCheck {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct ExampleReport {
  std::string example;
  std::vector<ExampleCheck> checks;
  bool pass() const;
};

// Reproduces the worked examples "4.1", "4.2", "4.3" on their built-in scenes.
// Throws UnknownName for any other id.
ExampleReport verify_example(std::string_view id);

std::vector<std::string> example_ids();

}  // namespace surfmmp
