#pragma once

#include <map>
#include <string>

#include "riskcap/diagnostics.hpp"
#include "riskcap/optimality.hpp"

#include <json.hpp>

namespace riskcap {

struct FileParse : Error { using Error::Error; };
struct NameNotFound : Error { using Error::Error; };

/// On-disk model: a scenario table, named positions, named assets and
/// optional defaults. JSON is the canonical form; CSV is an import path
/// (state,prob,<names...>) whose columns become positions.
struct ModelFile {
    SpacePtr space;
    std::map<std::string, Position> positions;
    std::map<std::string, TradedAsset> assets;
    double default_alpha = 0.1;
    std::string default_acceptance = "var";
    /// |sum(probs) - 1| before renormalization; reported for audit.
    double renormalization = 0.0;

    const Position& position(const std::string& name) const;
    /// Resolves an asset by name; a position of the same name is wrapped
    /// as a unit-price asset so CSV columns stay usable as payoffs.
    TradedAsset asset(const std::string& name) const;
};

ModelFile parse_model_json(const std::string& text);
ModelFile parse_model_csv(const std::string& text);
/// Dispatches on the .csv extension, JSON otherwise.
ModelFile load_model_file(const std::string& path);

/// Canonical, byte-stable JSON form; re-parses to an identical model.
std::string write_model_json(const ModelFile& m);

// ---------------------------------------------------------------------------
// Report serialization (infinities as the strings "+inf"/"-inf")
// ---------------------------------------------------------------------------

nlohmann::json to_json(const ExtendedAmount& a);
nlohmann::json to_json(const CapitalResult& r);
nlohmann::json to_json(const FinitenessReport& r, const ModelFile& m);
nlohmann::json to_json(const ContinuityReport& r, const ModelFile& m);
nlohmann::json to_json(const Verdict& v, const ModelFile& m);
nlohmann::json to_json(const DominanceResult& r, const ModelFile& m);

}  // namespace riskcap
