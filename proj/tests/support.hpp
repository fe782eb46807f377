#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "polymod/polygraph.hpp"

#ifndef POLYMOD_DATA_DIR
#define POLYMOD_DATA_DIR "presentations"
#endif

namespace polymod::testing {

  inline std::string data_path(std::string const& name) {
    return std::string(POLYMOD_DATA_DIR) + "/" + name;
  }

  inline std::string read_text(std::string const& name) {
    std::ifstream in(data_path(name), std::ios::binary);
    if (!in) {
      throw std::runtime_error("missing test data " + name);
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }

  inline Polygraph load(std::string const& name) {
    return parse_presentation(read_text(name));
  }

  /// β: x1x3 ⇒ x2x4, γ: x1x2 ⇒ x1 modulo commutation, before completion.
  inline Polygraph commutative() {
    return load("commutative.pm");
  }

  inline Polygraph commutative_completed() {
    return load("commutative_completed.pm");
  }

  /// Four pairwise commuting generators and no primary rules.
  inline Polygraph free_commutative(std::size_t n = 4, Mode mode = Mode::ERE) {
    std::string text = "generators:";
    std::string order = "order: deglex";
    for (std::size_t i = 1; i <= n; ++i) {
      text += " x" + std::to_string(i);
      order += (i == 1 ? " x" : " > x") + std::to_string(i);
    }
    text += "\n" + order + "\nmode: " + to_string(mode) + "\nmodulo commutation\n";
    return parse_presentation(text);
  }

  inline Word w(Polygraph const& p, std::string const& text) {
    return p.parse_word(text);
  }

}  // namespace polymod::testing
