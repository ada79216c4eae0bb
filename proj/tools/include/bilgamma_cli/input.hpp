#pragma once

#include "bilgamma/errors.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace bilgamma::cli {

/// Malformed input text; the message names the source and line.
class ParseError : public DomainError {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what);

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Daily closes with strictly increasing ISO-8601 dates and positive closes.
struct PriceSeries {
    std::vector<std::string> dates;
    std::vector<double> closes;
};

/// CSV with header `date,close`; LF or CRLF line ends, optional UTF-8 BOM.
PriceSeries parse_price_csv(std::istream& in, const std::string& source);
PriceSeries ingest_csv(const std::string& path);

/// ln(S_i / S_{i-1}), one entry fewer than the series.
std::vector<double> log_returns(const PriceSeries& series);

/// Increments of a sample: log returns of a `date,close` file, or increments
/// of the x column of a `time,x,x_plus,x_minus` path file.
std::vector<double> read_increments(const std::string& path);

/// `key = value` lines; `#` starts a comment; blank lines are ignored.
/// Duplicate keys are a ParseError.
using KeyValues = std::map<std::string, std::string>;
KeyValues parse_key_values(std::istream& in, const std::string& source);
KeyValues read_key_values(const std::string& path);

/// Comma-separated decimal numbers; DomainError naming `what` otherwise.
std::vector<double> parse_number_list(const std::string& text, const std::string& what);
double parse_number(const std::string& text, const std::string& what);

}  // namespace bilgamma::cli
