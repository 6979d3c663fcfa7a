#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace rrlab {

/// 17-significant-digit scientific notation; the reproducibility format for
/// every numeric output.
std::string fmt17(double v);

/// Writes via a temp file in the same directory plus rename, so no output is
/// ever left half-written.
void atomic_write_file(const std::string& path, const std::string& content);

/// Minimal JSON value tree; numbers are serialized through fmt17.
class Json {
public:
    enum class Type { Null, Bool, Number, Int, String, Array, Object };
    Json() : type_(Type::Null) {}
    Json(bool b) : type_(Type::Bool), bool_(b) {}
    Json(double v) : type_(Type::Number), num_(v) {}
    Json(long long v) : type_(Type::Int), int_(v) {}
    Json(int v) : type_(Type::Int), int_(v) {}
    Json(const char* s) : type_(Type::String), str_(s) {}
    Json(std::string s) : type_(Type::String), str_(std::move(s)) {}

    static Json array();
    static Json object();
    void push_back(Json v);
    Json& operator[](const std::string& key);
    std::string dump(int indent = 0) const;

private:
    Type type_;
    bool bool_ = false;
    double num_ = 0.0;
    long long int_ = 0;
    std::string str_;
    std::vector<Json> arr_;
    std::vector<std::pair<std::string, Json>> obj_;
    void dump_impl(std::string& out, int indent, int depth) const;
};

/// CSV table with fmt17 numeric cells.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
    void add_row(const std::vector<double>& row);
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// FNV-1a hash of a string, hex-encoded; used for config hashes.
std::string fnv1a_hex(const std::string& data);

struct RunManifest {
    std::string command;
    std::string config_hash;
    std::string code_version;
    unsigned long long seed = 0;
    std::vector<std::string> outputs;
    double wall_time_s = 0.0;
    std::string to_json() const;
};

extern const char* kCodeVersion;

}  // namespace rrlab
