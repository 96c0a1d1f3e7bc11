#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "isc/codes.hpp"

namespace isc {

// Text formats: one line per message branch with the k coefficient
// encodings of f^(j), and one line per basis row with its s + 1 element
// encodings. Every element is its packed integer rendered in decimal.

inline void write_message(std::ostream& os, const InterleavedMessage& msg, int k) {
    for (const auto& poly : msg.polys) {
        for (int i = 0; i < k; ++i) {
            if (i > 0) os << ' ';
            os << to_text(poly.coeff(i));
        }
        os << '\n';
    }
}

inline InterleavedMessage read_message(std::istream& is, const FieldContext& ctx, int s, int k) {
    InterleavedMessage msg;
    std::string line;
    while (int(msg.polys.size()) < s && std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        std::vector<Fe> coeffs;
        std::string tok;
        while (ls >> tok) coeffs.push_back(parse_element(ctx, tok));
        if (int(coeffs.size()) != k)
            throw std::invalid_argument("message line must hold exactly k = " + std::to_string(k) + " coefficients");
        msg.polys.push_back(LinearizedPoly::from_coeffs(std::move(coeffs)));
    }
    if (int(msg.polys.size()) != s) throw std::invalid_argument("message file must hold exactly s = " + std::to_string(s) + " lines");
    return msg;
}

inline void write_rows(std::ostream& os, const std::vector<std::vector<Fe>>& rows) {
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) os << ' ';
            os << to_text(row[i]);
        }
        os << '\n';
    }
}

inline std::vector<std::vector<Fe>> read_rows(std::istream& is, const FieldContext& ctx, int arity) {
    std::vector<std::vector<Fe>> rows;
    std::string line;
    while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        std::vector<Fe> row;
        std::string tok;
        while (ls >> tok) row.push_back(parse_element(ctx, tok));
        if (int(row.size()) != arity)
            throw std::invalid_argument("row must hold exactly " + std::to_string(arity) + " elements");
        rows.push_back(std::move(row));
    }
    return rows;
}

inline void write_candidates(std::ostream& os, const std::vector<InterleavedMessage>& candidates, int k) {
    bool first = true;
    for (const auto& msg : candidates) {
        if (!first) os << '\n';
        write_message(os, msg, k);
        first = false;
    }
}

}  // namespace isc
