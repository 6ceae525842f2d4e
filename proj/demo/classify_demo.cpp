// Classifies a few domains and prints the verdicts.
#include "reinhardt/reinhardt.hpp"

#include <iostream>

int main() {
  using namespace reinhardt;
  for (const char* text : {"n = 3\nQ = u1 + u2^2 + u3^2 - u2*u3", "n = 2\nQ = 4*u1 + 16*u2^2",
                           "n = 3\nQ = u1 + u2 + u3", "n = 2\nQ = u1 + u2^2 + u2^3"}) {
    const DomainSpec spec = parse_spec(text);
    const auto v = classify(spec);
    std::cout << spec.q().str() << "  ->  " << to_string(v.kind);
    if (v.model) std::cout << "  canonical: " << canonical_form(spec, v).q_text;
    else std::cout << "  (" << v.reason << ")";
    std::cout << "\n";
  }
}
