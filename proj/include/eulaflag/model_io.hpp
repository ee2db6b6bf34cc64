#pragma once

#include <filesystem>
#include <string>

#include "eulaflag/ensemble.hpp"
#include "eulaflag/pipeline.hpp"

namespace eulaflag {

/// Everything needed to classify new text: the fitted feature pipeline plus
/// the trained ensemble. Persisted as a single versioned JSON document whose
/// schema is documented in the README; doubles round-trip exactly, so a
/// save/load cycle leaves every prediction bit-identical.
struct ModelBundle {
    static constexpr int kFormatVersion = 1;

    FeaturePipeline pipeline;
    EnsembleModel ensemble;
};

void save_bundle(const ModelBundle& bundle, const std::filesystem::path& path);
ModelBundle load_bundle(const std::filesystem::path& path);

/// Serialized form (used both for the file and for fingerprinting).
std::string bundle_to_string(const ModelBundle& bundle);
ModelBundle bundle_from_string(const std::string& data);

/// FNV-1a over the serialized bundle, reported as 16 hex digits.
std::string bundle_fingerprint(const ModelBundle& bundle);

}  // namespace eulaflag
