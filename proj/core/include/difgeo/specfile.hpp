#pragma once

#include <map>
#include <string>
#include <vector>

#include "difgeo/curves.hpp"
#include "difgeo/surfaces.hpp"

namespace difgeo {

/// One task block of a spec file. Options stay as strings; the dispatcher
/// converts them, so a report can echo the inputs verbatim.
struct SpecTask {
    std::string action;
    int line = 0;
    std::map<std::string, std::string> options;

    bool has(const std::string& key) const { return options.count(key) != 0; }
    const std::string& get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;
};

/// Parsed `difgeo-spec v1` document: named objects plus an ordered task list.
struct SpecFile {
    int version = 1;
    std::map<std::string, CurveSpec> curves;
    std::map<std::string, SurfaceSpec> surfaces;
    std::vector<SpecTask> tasks;
};

/// Parse the spec-file dialect:
///   difgeo-spec v1
///   curve <name> / surface <name> / task <action> at column zero,
///   indented `key value` lines inside each block, `#` comments.
/// Unknown keys, unknown actions, duplicate names, and dangling object
/// references are parse errors carrying file:line.
SpecFile parse_specfile(const std::string& text, const std::string& filename = "<memory>");

SpecFile load_specfile(const std::string& path);

/// Strict scalar conversions for option values (whole string must parse).
double option_double(const SpecTask& task, const std::string& key);
double option_double(const SpecTask& task, const std::string& key, double fallback);
int option_int(const SpecTask& task, const std::string& key, int fallback);
std::pair<double, double> option_pair(const SpecTask& task, const std::string& key);

} // namespace difgeo
