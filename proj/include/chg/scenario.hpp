#pragma once
// End-to-end scenario orchestration: constants -> iso -> weight -> minimize1d
// -> predict (-> dynamics), with results persisted as JSON records, CSV
// tables, and SVG plots under an output directory.

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "chg/config.hpp"
#include "chg/report_io.hpp"

namespace chg {

struct ResultStore {
    std::string dir;                       // empty -> in-memory only
    nlohmann::json records = nlohmann::json::object();
    std::map<std::string, CsvTable> tables;
    std::vector<std::string> notes;

    void put(const std::string& key, nlohmann::json value);
    void save(const Config& cfg) const;    // records.json + manifest.json + CSVs
};

// Scenario names: "flat", "disk", "rect-crossover". A stage failure throws
// after saving the partial store with a failure record.
ResultStore run_scenario(const Config& cfg, const std::string& outdir);

// Writes deterministic SVGs for the tables present; returns written paths.
std::vector<std::string> emit_plots(ResultStore& store);

}  // namespace chg
