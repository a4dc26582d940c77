#pragma once

#include <iosfwd>
#include <string>

#include "kuboando/connections.hpp"

namespace kuboando {

// Matrix file format: a "dim n" header followed by n rows of n real entries.
PsdMatrix parse_matrix(std::istream& in);
PsdMatrix parse_matrix_file(const std::string& path);
std::string print_matrix(const HermitianMatrix& h);
std::string print_matrix(const PsdMatrix& a);

// Function spec grammar:
//   "affine a b" | "power alpha" | "logmean" | "moebius lambda"
//   | "sum w1 <spec1> + w2 <spec2>"
// The sum splits at the first " + ", so only the right operand may itself be a
// sum; chains nest to the right.
OMFunction parse_function_spec(const std::string& text);

// Inverse of the grammar above. Measure-backed functions are decomposed
// structurally (atoms to affine/moebius terms, catalog densities to their
// closed forms); densities outside the catalog throw UnsupportedInversion.
std::string print_function_spec(const OMFunction& f);

// Measure spec: one directive per line.
//   "atom0 m" | "atomInf m" | "atom lambda m" | "density <name> [scale]"
// Catalog density names: geometric, logmean-numeric.
RepMeasure parse_measure_spec(const std::string& text, QuadSpec q = {});
std::string print_measure_spec(const RepMeasure& mu);

// Connection spec grammar:
//   "mean arithmetic|geometric|harmonic|logarithmic" | "parallel"
//   | "function <function-spec>" | "measure <measure-file>"
//   | "scale k <spec>" | "sum <spec> + <spec>"
// Measure files are read relative to the working directory; q sets their
// quadrature. Sum splits at the first " + " (right-nesting, as above).
Connection parse_connection_spec(const std::string& text, QuadSpec q = {});

} // namespace kuboando
