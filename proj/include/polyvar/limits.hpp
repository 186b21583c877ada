#pragma once

#include <cstdlib>
#include <sstream>
#include <string>

#include "rational.hpp"

namespace polyvar {

// Desk-scale caps. Arrangement enumeration is exponential, so exceeding a cap
// is a hard error rather than a slow run. POLYVAR_LIMITS can override, e.g.
//   POLYVAR_LIMITS="dim=10,pieces=32,cons=64,hyperplanes=96,cells=500000"
struct Limits {
    int max_dim = 8;
    int max_pieces = 16;
    int max_constraints = 32;
    int max_hyperplanes = 64;
    long max_cells = 1L << 17;
};

inline Limits& limits() {
    static Limits l = [] {
        Limits lim;
        if (const char* env = std::getenv("POLYVAR_LIMITS")) {
            std::stringstream ss(env);
            std::string item;
            while (std::getline(ss, item, ',')) {
                auto eq = item.find('=');
                if (eq == std::string::npos) continue;
                std::string key = item.substr(0, eq);
                long value = std::atol(item.substr(eq + 1).c_str());
                if (value <= 0) continue;
                if (key == "dim") lim.max_dim = static_cast<int>(value);
                else if (key == "pieces") lim.max_pieces = static_cast<int>(value);
                else if (key == "cons") lim.max_constraints = static_cast<int>(value);
                else if (key == "hyperplanes") lim.max_hyperplanes = static_cast<int>(value);
                else if (key == "cells") lim.max_cells = value;
            }
        }
        return lim;
    }();
    return l;
}

inline void check_dim(int dim, const char* where) {
    if (dim < 0 || dim > limits().max_dim)
        throw LimitError(std::string(where) + ": ambient dimension " + std::to_string(dim) +
                         " exceeds limit " + std::to_string(limits().max_dim));
}

}  // namespace polyvar
