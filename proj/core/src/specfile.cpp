#include "difgeo/specfile.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "difgeo/error.hpp"

namespace difgeo {

namespace {

const std::map<std::string, std::set<std::string>>& task_schema() {
    static const std::map<std::string, std::set<std::string>> schema = {
        {"curve-analyze", {"object", "steps", "samples"}},
        {"curve-reconstruct", {"kappa", "tau", "length", "steps"}},
        {"curve-crofton", {"object", "dirs", "seed", "segments"}},
        {"surface-report", {"object", "at", "grid"}},
        {"surface-geodesic", {"object", "from", "dir", "to", "time", "steps"}},
        {"surface-transport",
         {"object", "loop-u", "loop-v", "t0", "t1", "w", "steps"}},
        {"surface-gauss-bonnet",
         {"object", "region", "indicator", "loop-u", "loop-v", "t0", "t1", "grid", "quad"}},
        {"surface-intrinsic", {"object", "at", "r-max", "nr", "ntheta", "h"}},
    };
    return schema;
}

struct Block {
    std::string head_kind, head_name;
    int line = 0;
    std::vector<std::pair<std::string, std::string>> entries; // with line numbers packed below
    std::vector<int> entry_lines;
};

[[noreturn]] void fail(const std::string& file, int line, const std::string& msg) {
    throw parse_error(file + ":" + std::to_string(line) + ": " + msg);
}

std::string strip(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& file, int line, const std::string& s) {
    try {
        size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) fail(file, line, "trailing characters in number '" + s + "'");
        return v;
    } catch (const std::invalid_argument&) {
        fail(file, line, "expected a number, got '" + s + "'");
    } catch (const std::out_of_range&) {
        fail(file, line, "number out of range: '" + s + "'");
    }
}

bool parse_bool(const std::string& file, int line, const std::string& s) {
    if (s == "true") return true;
    if (s == "false") return false;
    fail(file, line, "expected true/false, got '" + s + "'");
}

class BlockReader {
public:
    BlockReader(const std::string& file, const Block& b) : file_(file), b_(b) {
        seen_.assign(b.entries.size(), false);
    }

    bool has(const std::string& key) const {
        for (const auto& e : b_.entries)
            if (e.first == key) return true;
        return false;
    }
    std::string take(const std::string& key) {
        for (size_t i = 0; i < b_.entries.size(); ++i)
            if (b_.entries[i].first == key) {
                seen_[i] = true;
                return b_.entries[i].second;
            }
        fail(file_, b_.line, b_.head_kind + " '" + b_.head_name + "' is missing key '" + key + "'");
    }
    std::string take_or(const std::string& key, const std::string& fallback) {
        return has(key) ? take(key) : fallback;
    }
    double take_number(const std::string& key) {
        int line = line_of(key);
        return parse_number(file_, line, take(key));
    }
    int line_of(const std::string& key) const {
        for (size_t i = 0; i < b_.entries.size(); ++i)
            if (b_.entries[i].first == key) return b_.entry_lines[i];
        return b_.line;
    }
    /// Remaining (key, numeric value) pairs; used for builtin parameters.
    std::map<std::string, double> take_rest_numbers() {
        std::map<std::string, double> rest;
        for (size_t i = 0; i < b_.entries.size(); ++i)
            if (!seen_[i]) {
                rest[b_.entries[i].first] =
                    parse_number(file_, b_.entry_lines[i], b_.entries[i].second);
                seen_[i] = true;
            }
        return rest;
    }
    void reject_unknown(const std::set<std::string>& allowed) const {
        for (size_t i = 0; i < b_.entries.size(); ++i)
            if (!allowed.count(b_.entries[i].first))
                fail(file_, b_.entry_lines[i],
                     "unknown key '" + b_.entries[i].first + "' in " + b_.head_kind + " '" +
                         b_.head_name + "'");
    }

private:
    const std::string& file_;
    const Block& b_;
    std::vector<bool> seen_;
};

CurveSpec build_curve(const std::string& file, Block& b) {
    BlockReader r(file, b);
    r.reject_unknown({"x", "y", "z", "t0", "t1", "closed"});
    std::string x = r.take("x"), y = r.take("y"), z = r.take_or("z", "0");
    double t0 = r.take_number("t0"), t1 = r.take_number("t1");
    bool closed = parse_bool(file, r.line_of("closed"), r.take_or("closed", "false"));
    try {
        return CurveSpec::analytic(x, y, z, t0, t1, closed);
    } catch (const Error& e) {
        fail(file, b.line, std::string("curve '") + b.head_name + "': " + e.what());
    }
}

SurfaceSpec build_surface(const std::string& file, Block& b) {
    BlockReader r(file, b);
    try {
        if (r.has("builtin")) {
            std::string name = r.take("builtin");
            return SurfaceSpec::builtin(name, r.take_rest_numbers());
        }
        if (r.has("graph")) {
            r.reject_unknown({"graph", "u0", "u1", "v0", "v1"});
            std::string f = r.take("graph");
            return SurfaceSpec::graph(f, r.take_number("u0"), r.take_number("u1"),
                                      r.take_number("v0"), r.take_number("v1"));
        }
        if (r.has("axial") || r.has("radial")) {
            r.reject_unknown({"axial", "radial", "s0", "s1", "a0", "a1"});
            return SurfaceSpec::revolution(r.take("axial"), r.take("radial"),
                                           r.take_number("s0"), r.take_number("s1"),
                                           r.take_number("a0"), r.take_number("a1"));
        }
        r.reject_unknown({"x", "y", "z", "u0", "u1", "v0", "v1"});
        std::string x = r.take("x"), y = r.take("y"), z = r.take("z");
        return SurfaceSpec::parametric(x, y, z, r.take_number("u0"), r.take_number("u1"),
                                       r.take_number("v0"), r.take_number("v1"));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Parse) throw;
        fail(file, b.line, std::string("surface '") + b.head_name + "': " + e.what());
    }
}

} // namespace

const std::string& SpecTask::get(const std::string& key) const {
    auto it = options.find(key);
    if (it == options.end())
        throw usage_error("task '" + action + "' is missing required option '" + key + "'");
    return it->second;
}

std::string SpecTask::get_or(const std::string& key, const std::string& fallback) const {
    auto it = options.find(key);
    return it == options.end() ? fallback : it->second;
}

SpecFile parse_specfile(const std::string& text, const std::string& filename) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    if (!std::getline(in, line)) fail(filename, 1, "empty spec file");
    ++lineno;
    if (strip(line) != "difgeo-spec v1")
        fail(filename, 1, "expected header 'difgeo-spec v1', got '" + strip(line) + "'");

    std::vector<Block> blocks;
    while (std::getline(in, line)) {
        ++lineno;
        std::string body = strip(line);
        if (body.empty() || body[0] == '#') continue;
        bool indented = line[0] == ' ' || line[0] == '\t';

        size_t sp = body.find(' ');
        std::string first = sp == std::string::npos ? body : body.substr(0, sp);
        std::string rest = sp == std::string::npos ? "" : strip(body.substr(sp + 1));

        if (!indented) {
            if (first != "curve" && first != "surface" && first != "task")
                fail(filename, lineno, "expected 'curve', 'surface', or 'task', got '" + first + "'");
            if (rest.empty()) fail(filename, lineno, "'" + first + "' needs a name");
            blocks.push_back({first, rest, lineno, {}, {}});
        } else {
            if (blocks.empty()) fail(filename, lineno, "indented line outside any block");
            if (rest.empty()) fail(filename, lineno, "key '" + first + "' has no value");
            blocks.back().entries.push_back({first, rest});
            blocks.back().entry_lines.push_back(lineno);
        }
    }

    SpecFile spec;
    for (Block& b : blocks) {
        if (b.head_kind == "curve") {
            if (spec.curves.count(b.head_name) || spec.surfaces.count(b.head_name))
                fail(filename, b.line, "duplicate object name '" + b.head_name + "'");
            spec.curves.emplace(b.head_name, build_curve(filename, b));
        } else if (b.head_kind == "surface") {
            if (spec.curves.count(b.head_name) || spec.surfaces.count(b.head_name))
                fail(filename, b.line, "duplicate object name '" + b.head_name + "'");
            spec.surfaces.emplace(b.head_name, build_surface(filename, b));
        } else {
            auto it = task_schema().find(b.head_name);
            if (it == task_schema().end())
                fail(filename, b.line, "unknown task action '" + b.head_name + "'");
            SpecTask task;
            task.action = b.head_name;
            task.line = b.line;
            for (size_t i = 0; i < b.entries.size(); ++i) {
                if (!it->second.count(b.entries[i].first))
                    fail(filename, b.entry_lines[i],
                         "unknown option '" + b.entries[i].first + "' for task '" + b.head_name +
                             "'");
                if (task.options.count(b.entries[i].first))
                    fail(filename, b.entry_lines[i],
                         "duplicate option '" + b.entries[i].first + "'");
                task.options[b.entries[i].first] = b.entries[i].second;
            }
            spec.tasks.push_back(std::move(task));
        }
    }

    // references must resolve to an object of the right family
    for (const SpecTask& t : spec.tasks) {
        if (!t.has("object")) continue;
        const std::string& name = t.get("object");
        bool is_curve_task = t.action.rfind("curve-", 0) == 0;
        bool found = is_curve_task ? spec.curves.count(name) != 0 : spec.surfaces.count(name) != 0;
        if (!found)
            fail(filename, t.line,
                 "task '" + t.action + "' references unknown " +
                     (is_curve_task ? "curve" : "surface") + " '" + name + "'");
    }
    return spec;
}

SpecFile load_specfile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open spec file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_specfile(buf.str(), path);
}

double option_double(const SpecTask& task, const std::string& key) {
    const std::string& s = task.get(key);
    return parse_number("<option>", task.line, s);
}

double option_double(const SpecTask& task, const std::string& key, double fallback) {
    return task.has(key) ? option_double(task, key) : fallback;
}

int option_int(const SpecTask& task, const std::string& key, int fallback) {
    if (!task.has(key)) return fallback;
    double v = option_double(task, key);
    int i = (int)std::lround(v);
    if (i != v) throw usage_error("option '" + key + "' must be an integer");
    return i;
}

std::pair<double, double> option_pair(const SpecTask& task, const std::string& key) {
    const std::string& s = task.get(key);
    size_t comma = s.find(',');
    if (comma == std::string::npos)
        throw usage_error("option '" + key + "' must be 'a,b', got '" + s + "'");
    return {parse_number("<option>", task.line, strip(s.substr(0, comma))),
            parse_number("<option>", task.line, strip(s.substr(comma + 1)))};
}

} // namespace difgeo
