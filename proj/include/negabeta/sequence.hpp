#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "negabeta/error.hpp"

namespace negabeta {

using DigitWord = std::vector<int>;

inline std::string to_string(const DigitWord& w) {
    std::string s;
    for (int d : w) {
        if (d >= 1 && d <= 9) {
            s += static_cast<char>('0' + d);
        } else {
            s += '(' + std::to_string(d) + ')';
        }
    }
    return s;
}

/// Parses digits written as characters '1'..'9', with "(12)" for larger digits.
inline DigitWord parse_word(std::string_view text) {
    DigitWord w;
    for (size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c >= '0' && c <= '9') {
            w.push_back(c - '0');
        } else if (c == '(') {
            size_t close = text.find(')', i);
            if (close == std::string_view::npos) fail(ErrorKind::Domain, "unbalanced digit group");
            std::string inner(text.substr(i + 1, close - i - 1));
            if (inner.empty() || !std::all_of(inner.begin(), inner.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
                fail(ErrorKind::Domain, "bad digit group: " + inner);
            w.push_back(std::stoi(inner));
            i = close;
        } else if (c != ' ') {
            fail(ErrorKind::Domain, std::string("unexpected character in digit word: ") + c);
        }
    }
    return w;
}

/// Eventually periodic digit sequence preperiod · period^∞, kept canonical:
/// primitive period and shortest preperiod.
class EvPeriodic {
public:
    EvPeriodic() = default;

    EvPeriodic(DigitWord preperiod, DigitWord period) : pre_(std::move(preperiod)), per_(std::move(period)) {
        if (per_.empty()) fail(ErrorKind::Domain, "period must be nonempty");
        for (int d : pre_)
            if (d < 1) fail(ErrorKind::Domain, "digits must be positive");
        for (int d : per_)
            if (d < 1) fail(ErrorKind::Domain, "digits must be positive");
        canonicalize();
    }

    static EvPeriodic periodic(DigitWord period) { return {{}, std::move(period)}; }

    /// "pre|period", e.g. "2|1" for 2(1)^∞ and "|32" for (32)^∞.
    static EvPeriodic parse(std::string_view text) {
        auto bar = text.find('|');
        if (bar == std::string_view::npos) fail(ErrorKind::Domain, "expected \"pre|period\": " + std::string(text));
        return {parse_word(text.substr(0, bar)), parse_word(text.substr(bar + 1))};
    }

    const DigitWord& preperiod() const { return pre_; }
    const DigitWord& period() const { return per_; }
    size_t pre_len() const { return pre_.size(); }
    size_t period_len() const { return per_.size(); }
    bool purely_periodic() const { return pre_.empty(); }

    /// Number of distinct tails σ^0, ..., σ^{pre+period-1}.
    size_t tail_count() const { return pre_.size() + per_.size(); }

    /// 1-indexed symbol access.
    int at(size_t i) const {
        size_t k = i - 1;
        if (k < pre_.size()) return pre_[k];
        return per_[(k - pre_.size()) % per_.size()];
    }

    DigitWord prefix(size_t n) const {
        DigitWord w(n);
        for (size_t i = 0; i < n; ++i) w[i] = at(i + 1);
        return w;
    }

    int max_digit() const {
        int m = *std::max_element(per_.begin(), per_.end());
        for (int d : pre_) m = std::max(m, d);
        return m;
    }

    EvPeriodic shifted(size_t k) const {
        if (k <= pre_.size()) return {DigitWord(pre_.begin() + static_cast<long>(k), pre_.end()), per_};
        size_t r = (k - pre_.size()) % per_.size();
        DigitWord rot(per_.begin() + static_cast<long>(r), per_.end());
        rot.insert(rot.end(), per_.begin(), per_.begin() + static_cast<long>(r));
        return {{}, rot};
    }

    /// The sequence u · this.
    EvPeriodic prepended(const DigitWord& u) const {
        DigitWord pre = u;
        pre.insert(pre.end(), pre_.begin(), pre_.end());
        return {pre, per_};
    }

    std::string str() const { return to_string(pre_) + "|" + to_string(per_); }

    friend bool operator==(const EvPeriodic& a, const EvPeriodic& b) { return a.pre_ == b.pre_ && a.per_ == b.per_; }
    friend bool operator<(const EvPeriodic& a, const EvPeriodic& b) {
        return a.pre_ != b.pre_ ? a.pre_ < b.pre_ : a.per_ < b.per_;
    }

private:
    void canonicalize() {
        const size_t p = per_.size();
        for (size_t d = 1; d < p; ++d) {
            if (p % d) continue;
            bool ok = true;
            for (size_t i = d; i < p && ok; ++i) ok = per_[i] == per_[i - d];
            if (ok) {
                per_.resize(d);
                break;
            }
        }
        while (!pre_.empty() && pre_.back() == per_.back()) {
            std::rotate(per_.rbegin(), per_.rbegin() + 1, per_.rend());
            pre_.pop_back();
        }
    }

    DigitWord pre_, per_;
};

}  // namespace negabeta
