#pragma once

#include "ciqc/fano_lines.hpp"
#include "ciqc/genus_one.hpp"
#include "ciqc/reconstruction.hpp"

#include "json.hpp"

#include <string>

namespace ciqc {

using Json = nlohmann::ordered_json;

struct OutputOptions {
    bool q_at_one = false; // substitute q = 1 when printing
};

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const QPoly& p, const OutputOptions& opt = {});
QPoly qpoly_from_json(const Json& j, int qmax = QPoly::kUntruncated);

Json to_json(const RVector& v);
Json to_json(const RMatrix& m);
Json to_json(const QVector& v, const OutputOptions& opt = {});
Json to_json(const QMatrix& m, const OutputOptions& opt = {});

Json to_json(const TruncSeries& f, const OutputOptions& opt = {});
TruncSeries series_from_json(const Json& j);

Json to_json(const CIDescriptor& desc);
Json ring_json(const QuantumRingData& ring, const OutputOptions& opt = {});
Json f1_json(const QuantumRingData& ring, const F1Jet& f1, const OutputOptions& opt = {});
Json f2_json(const F2Origin& origin, const std::vector<F2Gradient>& gradients, const OutputOptions& opt = {});
Json to_json(const HigherKReport& r);

// File format read by `ciqc residual --load`.
Json potential_json(const ReducedPotential& pot, const CIDescriptor& desc, const OutputOptions& opt = {});
// Rebuilds the pairing data from the descriptor in the file.
ReducedPotential potential_from_json(const Json& j);

Json residual_json(const ReducedPotential& pot, const CIDescriptor& desc, const OutputOptions& opt = {});

Json to_json(const PrimSquare& p);
Json to_json(const OmegaReport& r);
Json to_json(const RankReport& r);
Json to_json(const Hilb2Report& r);
Json to_json(const Hn11Report& r);
Json to_json(const GenusOneReport& r);

// One line per leaf: dotted path, then the value; arrays of scalars become tab-separated columns.
std::string json_to_tsv(const Json& j, bool header = true);

} // namespace ciqc
