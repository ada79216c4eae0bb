#include "bilgamma_cli/input.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace bilgamma::cli {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(s);
    while (std::getline(is, cell, sep)) out.push_back(trim(cell));
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

/// Reads lines with any trailing CR removed and a leading UTF-8 BOM skipped.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::string& line) {
        if (!std::getline(in_, line)) return false;
        ++number_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (number_ == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
        return true;
    }

    std::size_t number() const { return number_; }

private:
    std::istream& in_;
    std::size_t number_ = 0;
};

bool parse_double(const std::string& text, double& value) {
    const char* first = text.data();
    const char* last = first + text.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    return ec == std::errc() && ptr == last && first != last && std::isfinite(value);
}

bool valid_iso_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    const int y = std::stoi(s.substr(0, 4));
    const unsigned m = static_cast<unsigned>(std::stoi(s.substr(5, 2)));
    const unsigned d = static_cast<unsigned>(std::stoi(s.substr(8, 2)));
    return std::chrono::year_month_day{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}}.ok();
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open input file '" + path + "'");
    return in;
}

std::vector<double> path_increments(LineReader& reader, const std::string& source) {
    std::vector<double> xs;
    std::string line;
    while (reader.next(line)) {
        if (trim(line).empty()) continue;
        const auto cells = split(line, ',');
        double x = 0.0;
        if (cells.size() != 4 || !parse_double(cells[1], x)) {
            throw ParseError(source, reader.number(), "expected time,x,x_plus,x_minus");
        }
        xs.push_back(x);
    }
    if (xs.size() < 2) throw DomainError(source + ": a path needs at least two rows");
    std::vector<double> dx(xs.size() - 1);
    for (std::size_t i = 0; i < dx.size(); ++i) dx[i] = xs[i + 1] - xs[i];
    return dx;
}

}  // namespace

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& what)
    : DomainError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

PriceSeries parse_price_csv(std::istream& in, const std::string& source) {
    LineReader reader(in);
    std::string line;
    if (!reader.next(line) || trim(line) != "date,close") {
        throw ParseError(source, reader.number() == 0 ? 1 : reader.number(), "expected header 'date,close'");
    }
    PriceSeries series;
    while (reader.next(line)) {
        if (trim(line).empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != 2) throw ParseError(source, reader.number(), "expected two fields");
        if (!valid_iso_date(cells[0])) throw ParseError(source, reader.number(), "invalid date '" + cells[0] + "'");
        double close = 0.0;
        if (!parse_double(cells[1], close)) {
            throw ParseError(source, reader.number(), "invalid close '" + cells[1] + "'");
        }
        if (!(close > 0.0)) throw ParseError(source, reader.number(), "close must be positive");
        if (!series.dates.empty() && !(cells[0] > series.dates.back())) {
            throw DomainError(source + ":" + std::to_string(reader.number()) + ": dates must increase strictly");
        }
        series.dates.push_back(cells[0]);
        series.closes.push_back(close);
    }
    if (series.closes.size() < 2) throw DomainError(source + ": need at least two closes");
    return series;
}

PriceSeries ingest_csv(const std::string& path) {
    std::ifstream in = open_input(path);
    return parse_price_csv(in, path);
}

std::vector<double> log_returns(const PriceSeries& series) {
    std::vector<double> out;
    for (std::size_t i = 1; i < series.closes.size(); ++i) out.push_back(std::log(series.closes[i] / series.closes[i - 1]));
    return out;
}

std::vector<double> read_increments(const std::string& path) {
    std::ifstream in = open_input(path);
    std::string header;
    {
        LineReader probe(in);
        if (!probe.next(header)) throw ParseError(path, 1, "empty file");
    }
    header = trim(header);
    if (header == "time,x,x_plus,x_minus") {
        in.clear();
        in.seekg(0);
        LineReader reader(in);
        std::string skip;
        reader.next(skip);
        return path_increments(reader, path);
    }
    in.clear();
    in.seekg(0);
    return log_returns(parse_price_csv(in, path));
}

KeyValues parse_key_values(std::istream& in, const std::string& source) {
    LineReader reader(in);
    KeyValues kv;
    std::string line;
    while (reader.next(line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(source, reader.number(), "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError(source, reader.number(), "empty key");
        if (!kv.emplace(key, value).second) throw ParseError(source, reader.number(), "duplicate key '" + key + "'");
    }
    return kv;
}

KeyValues read_key_values(const std::string& path) {
    std::ifstream in = open_input(path);
    return parse_key_values(in, path);
}

std::vector<double> parse_number_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    for (const auto& cell : split(text, ',')) {
        double v = 0.0;
        if (!parse_double(cell, v)) throw DomainError(what + ": '" + text + "' is not a list of numbers");
        out.push_back(v);
    }
    if (out.empty()) throw DomainError(what + ": empty list");
    return out;
}

double parse_number(const std::string& text, const std::string& what) {
    double v = 0.0;
    if (!parse_double(trim(text), v)) throw DomainError(what + ": '" + text + "' is not a number");
    return v;
}

}  // namespace bilgamma::cli
