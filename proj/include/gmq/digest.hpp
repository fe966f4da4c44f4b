#pragma once

#include "gmq/linalg.hpp"

#include <string>

namespace gmq {

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& data);

/// Text rendering used for digests: entries column by column, space separated.
template <class S>
std::string matrix_text(const Mat<S>& m) {
    std::string s = std::to_string(m.rows()) + "x" + std::to_string(m.cols());
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) s += " " + to_string(m(i, j));
    return s;
}

template <class S>
std::string matrix_digest(const Mat<S>& m) {
    return sha256_hex(matrix_text(m)).substr(0, 16);
}

}  // namespace gmq
