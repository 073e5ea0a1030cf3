#include "twocross/model.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <vector>

namespace twocross {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
    throw ModelError(origin + ":" + std::to_string(line) + ": " + msg);
}

// split on top-level commas (parentheses nest)
std::vector<std::string> split_exprs(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

ModelFile parse_model_text(const std::string& text, const std::string& origin) {
    ModelFile mf;
    std::array<bool, 4> seen{false, false, false, false};

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;

        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (head == "param") {
            std::string name, eq;
            ls >> name >> eq;
            if (name.empty() || eq != "=") fail(origin, lineno, "expected `param <name> = <number>`");
            std::string rest;
            std::getline(ls, rest);
            try {
                mf.params[name] = std::stod(trim(rest));
            } catch (const std::exception&) {
                fail(origin, lineno, "malformed number in param line");
            }
            continue;
        }
        if (head == "field") {
            std::string label;
            ls >> label;
            if (label != "++" && label != "+-" && label != "-+" && label != "--")
                fail(origin, lineno, "quadrant label must be one of ++ +- -+ --");
            std::string rest;
            std::getline(ls, rest);
            rest = trim(rest);
            if (rest.empty() || rest[0] != ':') fail(origin, lineno, "expected ':' after quadrant label");
            rest = rest.substr(1);
            std::vector<std::string> parts = split_exprs(rest);
            if (parts.size() != 3) fail(origin, lineno, "expected three comma-separated components");
            SignPair s{label[0] == '+' ? +1 : -1, label[1] == '+' ? +1 : -1};
            if (seen[s.index()]) fail(origin, lineno, "duplicate quadrant `" + label + "`");
            seen[s.index()] = true;
            SmoothField3 f;
            Expression* comps[3] = {&f.comp1, &f.comp2, &f.comp3};
            for (int i = 0; i < 3; ++i) {
                try {
                    *comps[i] = parse_expression(parts[i], mf.params);
                } catch (const ParseError& e) {
                    fail(origin, lineno, std::string("component ") + std::to_string(i + 1) +
                                             ": " + e.what());
                }
            }
            mf.field.field(s) = f;
            continue;
        }
        fail(origin, lineno, "unrecognized directive `" + head + "`");
    }

    for (SignPair s : SignPair::all())
        if (!seen[s.index()])
            throw ModelError(origin + ": missing quadrant `" + s.label() + "`");
    return mf;
}

ModelFile parse_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ModelError("cannot open model file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_model_text(ss.str(), path);
}

}  // namespace twocross
