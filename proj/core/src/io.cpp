#include "rrlab/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace rrlab {

const char* kCodeVersion = "0.1.0";

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

void atomic_write_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("atomic_write_file: cannot open " + tmp.string());
        out << content;
        if (!out.good()) throw std::runtime_error("atomic_write_file: write failed");
    }
    fs::rename(tmp, target);
}

Json Json::array() {
    Json j;
    j.type_ = Type::Array;
    return j;
}

Json Json::object() {
    Json j;
    j.type_ = Type::Object;
    return j;
}

void Json::push_back(Json v) {
    if (type_ == Type::Null) type_ = Type::Array;
    if (type_ != Type::Array) throw std::logic_error("Json: push_back on non-array");
    arr_.push_back(std::move(v));
}

Json& Json::operator[](const std::string& key) {
    if (type_ == Type::Null) type_ = Type::Object;
    if (type_ != Type::Object) throw std::logic_error("Json: key access on non-object");
    for (auto& [k, v] : obj_)
        if (k == key) return v;
    obj_.emplace_back(key, Json());
    return obj_.back().second;
}

namespace {
void append_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
}
}  // namespace

void Json::dump_impl(std::string& out, int indent, int depth) const {
    const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent) * depth, ' ')
                                       : std::string();
    const std::string pad_in =
        indent > 0 ? std::string(static_cast<std::size_t>(indent) * (depth + 1), ' ')
                   : std::string();
    const char* nl = indent > 0 ? "\n" : "";
    switch (type_) {
        case Type::Null: out += "null"; break;
        case Type::Bool: out += bool_ ? "true" : "false"; break;
        case Type::Number: out += fmt17(num_); break;
        case Type::Int: out += std::to_string(int_); break;
        case Type::String: append_escaped(out, str_); break;
        case Type::Array: {
            out += '[';
            for (std::size_t i = 0; i < arr_.size(); ++i) {
                out += nl;
                out += pad_in;
                arr_[i].dump_impl(out, indent, depth + 1);
                if (i + 1 < arr_.size()) out += ',';
            }
            if (!arr_.empty()) {
                out += nl;
                out += pad;
            }
            out += ']';
            break;
        }
        case Type::Object: {
            out += '{';
            for (std::size_t i = 0; i < obj_.size(); ++i) {
                out += nl;
                out += pad_in;
                append_escaped(out, obj_[i].first);
                out += indent > 0 ? ": " : ":";
                obj_[i].second.dump_impl(out, indent, depth + 1);
                if (i + 1 < obj_.size()) out += ',';
            }
            if (!obj_.empty()) {
                out += nl;
                out += pad;
            }
            out += '}';
            break;
        }
    }
}

std::string Json::dump(int indent) const {
    std::string out;
    dump_impl(out, indent, 0);
    if (indent > 0) out += '\n';
    return out;
}

void CsvTable::add_row(const std::vector<double>& row) {
    std::vector<std::string> cells;
    cells.reserve(row.size());
    for (double v : row) cells.push_back(fmt17(v));
    rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i) {
        out += header_[i];
        out += i + 1 < header_.size() ? "," : "";
    }
    out += '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += row[i];
            out += i + 1 < row.size() ? "," : "";
        }
        out += '\n';
    }
    return out;
}

std::string fnv1a_hex(const std::string& data) {
    unsigned long long h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", h);
    return buf;
}

std::string RunManifest::to_json() const {
    Json j = Json::object();
    j["command"] = Json(command);
    j["config_hash"] = Json(config_hash);
    j["code_version"] = Json(code_version);
    j["seed"] = Json(static_cast<long long>(seed));
    Json outs = Json::array();
    for (const auto& o : outputs) outs.push_back(Json(o));
    j["outputs"] = std::move(outs);
    j["wall_time_s"] = Json(wall_time_s);
    return j.dump(2);
}

}  // namespace rrlab
