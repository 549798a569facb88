#pragma once
// JSON serialization of short abstract complexes, CW complexes and
// triangulated surfaces.

#include "hopfstab/topology.hpp"

namespace hopfstab {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// {"ring": {"kind":"Z"} | {"kind":"Zmod","n":4}, "plus":[...], "circ":[...],
//  "minus":[...], "I_plus":[[...]], "I_minus":[[...]]}
// I_plus rows follow the plus order and columns the circ order; I_minus rows
// follow the circ order and columns the minus order.
SAC sac_from_json(const std::string& text);
std::string sac_to_json(const SAC& x);

// {"cells": {"0":[...],"1":[...]}, "incidence": {"1":[[...]],...},
//  "basepoint":"v0"}; incidence "q" is a count(q-1) x count(q) grid.
CWComplex cw_from_json(const std::string& text);
std::string cw_to_json(const CWComplex& k);

// {"vertices":[...], "triangles":[[a,b,c],...]}; listed order = orientation.
SimplicialSurface surface_from_json(const std::string& text);

enum class InputKind { Sac, Cw, Surface };
// Dispatch on the top-level keys ("plus" / "cells" / "vertices").
InputKind classify_json(const std::string& text);

std::string read_text_file(const std::string& path);  // throws ParseError

}  // namespace hopfstab
