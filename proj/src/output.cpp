#include "optophase/output.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace optophase {

std::string format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

void write_csv(const SweepResult& r, std::ostream& out)
{
    out << "# schema_version: " << kJsonSchemaVersion << '\n';
    for (const auto& [key, value] : r.meta.items())
        out << "# " << key << ": " << value.dump() << '\n';
    for (std::size_t c = 0; c < r.columns.size(); ++c)
        out << (c ? "," : "") << r.columns[c];
    out << '\n';
    for (Eigen::Index i = 0; i < r.rows.rows(); ++i) {
        for (Eigen::Index c = 0; c < r.rows.cols(); ++c)
            out << (c ? "," : "") << format_double(r.rows(i, c));
        out << '\n';
    }
}

nlohmann::ordered_json to_json(const SweepResult& r)
{
    nlohmann::ordered_json j;
    j["schema_version"] = kJsonSchemaVersion;
    j["meta"] = r.meta;
    j["columns"] = r.columns;
    j["rows"] = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < r.rows.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (Eigen::Index c = 0; c < r.rows.cols(); ++c) {
            const double v = r.rows(i, c);
            if (std::isfinite(v))
                row.push_back(v);
            else
                row.push_back(nullptr);
        }
        j["rows"].push_back(std::move(row));
    }
    return j;
}

void write_json(const SweepResult& r, std::ostream& out)
{
    out << to_json(r).dump(2) << '\n';
}

SweepResult from_json(const nlohmann::ordered_json& j)
{
    try {
        if (j.at("schema_version").get<int>() != kJsonSchemaVersion)
            throw std::invalid_argument("unsupported schema_version");
        SweepResult r;
        r.meta = j.at("meta");
        r.columns = j.at("columns").get<std::vector<std::string>>();
        const auto& rows = j.at("rows");
        r.rows.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(r.columns.size()));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != r.columns.size())
                throw std::invalid_argument("row " + std::to_string(i) + " has the wrong number of values");
            for (std::size_t c = 0; c < r.columns.size(); ++c) {
                const auto& v = rows[i][c];
                r.rows(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
                    v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
            }
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed sweep document: ") + e.what());
    }
}

SweepResult read_json(std::istream& in)
{
    nlohmann::ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed sweep document: ") + e.what());
    }
    return from_json(j);
}

}  // namespace optophase
