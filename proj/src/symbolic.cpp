#include "bakerrays/symbolic.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "bakerrays/errors.hpp"

namespace baker {

Word parse_word(std::string_view text) {
    Word w;
    w.reserve(text.size());
    for (char c : text) {
        if (c == '0' || c == '1') w.push_back(static_cast<Symbol>(c - '0'));
        else if (!std::isspace(static_cast<unsigned char>(c)))
            throw DomainError(std::string("invalid symbol '") + c + "' in word");
    }
    return w;
}

std::string format_word(const Word& w) {
    std::string s;
    s.reserve(w.size());
    for (Symbol c : w) s.push_back(static_cast<char>('0' + c));
    return s;
}

std::uint64_t Schedule::block(std::size_t k) const {
    if (k < blocks.size()) return blocks[k];
    const std::uint64_t last = blocks.back();
    if (growth == Growth::Arithmetic) return last + step * (k - blocks.size() + 1);
    return last;
}

namespace {

Word primitive_root(const Word& w) {
    const std::size_t n = w.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        bool ok = true;
        for (std::size_t i = d; i < n && ok; ++i) ok = w[i] == w[i - d];
        if (ok) return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(d));
    }
    return w;
}

}  // namespace

void SymbolSequence::normalize() {
    if (kind_ == TailKind::Periodic) {
        if (period_.empty()) throw DomainError("periodic tail must be nonempty");
        period_ = primitive_root(period_);
        if (period_.size() == 1) {
            kind_ = TailKind::Constant;
            constant_ = period_[0];
            period_.clear();
        } else {
            while (!prefix_.empty() && prefix_.back() == period_.back()) {
                std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
                prefix_.pop_back();
            }
        }
    }
    if (kind_ == TailKind::Constant) {
        if (constant_ > 1) throw DomainError("symbol must be 0 or 1");
        while (!prefix_.empty() && prefix_.back() == constant_) prefix_.pop_back();
    }
    if (kind_ == TailKind::Schedule) {
        if (schedule_.blocks.empty()) throw DomainError("schedule needs at least one block");
        for (auto b : schedule_.blocks)
            if (b < 1) throw DomainError("schedule blocks must be >= 1");
        if (schedule_.growth == Schedule::Growth::Arithmetic && schedule_.step == 0)
            schedule_.growth = Schedule::Growth::Repeat;
        if (schedule_.growth != Schedule::Growth::Arithmetic) schedule_.step = 0;
        if (schedule_.growth == Schedule::Growth::Repeat) {
            // A repeated block is just a periodic tail.
            for (std::size_t k = 0; k + 1 < schedule_.blocks.size(); ++k) {
                prefix_.push_back(1);
                prefix_.insert(prefix_.end(), schedule_.blocks[k], 0);
            }
            period_.assign(1 + schedule_.blocks.back(), 0);
            period_[0] = 1;
            schedule_ = {};
            kind_ = TailKind::Periodic;
            normalize();
            return;
        }
    }
    for (Symbol c : prefix_)
        if (c > 1) throw DomainError("symbol must be 0 or 1");
}

SymbolSequence SymbolSequence::constant(Word prefix, Symbol c) {
    SymbolSequence s;
    s.prefix_ = std::move(prefix);
    s.kind_ = TailKind::Constant;
    s.constant_ = c;
    s.normalize();
    return s;
}

SymbolSequence SymbolSequence::periodic(Word prefix, Word period) {
    SymbolSequence s;
    s.prefix_ = std::move(prefix);
    s.kind_ = TailKind::Periodic;
    s.period_ = std::move(period);
    s.normalize();
    return s;
}

SymbolSequence SymbolSequence::scheduled(Word prefix, Schedule schedule) {
    SymbolSequence s;
    s.prefix_ = std::move(prefix);
    s.kind_ = TailKind::Schedule;
    s.schedule_ = std::move(schedule);
    s.normalize();
    return s;
}

Symbol SymbolSequence::at(std::uint64_t n) const {
    if (n < prefix_.size()) return prefix_[n];
    std::uint64_t m = n - prefix_.size();
    switch (kind_) {
        case TailKind::Constant: return constant_;
        case TailKind::Periodic: return period_[m % period_.size()];
        case TailKind::Schedule:
            for (std::size_t k = 0;; ++k) {
                const std::uint64_t len = 1 + schedule_.block(k);
                if (m < len) return m == 0 ? 1 : 0;
                m -= len;
            }
    }
    return 0;
}

Word SymbolSequence::take(std::uint64_t n) const {
    Word out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n && i < prefix_.size(); ++i) out.push_back(prefix_[i]);
    if (kind_ == TailKind::Schedule) {
        for (std::size_t k = 0; out.size() < n; ++k) {
            out.push_back(1);
            const std::uint64_t b = schedule_.block(k);
            for (std::uint64_t j = 0; j < b && out.size() < n; ++j) out.push_back(0);
        }
        return out;
    }
    while (out.size() < n) out.push_back(at(out.size()));
    return out;
}

std::string SymbolSequence::to_string() const {
    std::string s = format_word(prefix_);
    switch (kind_) {
        case TailKind::Constant: s += static_cast<char>('0' + constant_); s += '~'; break;
        case TailKind::Periodic: s += '(' + format_word(period_) + ")*"; break;
        case TailKind::Schedule: {
            s += '{';
            for (std::size_t i = 0; i < schedule_.blocks.size(); ++i) {
                if (i) s += ',';
                s += std::to_string(schedule_.blocks[i]);
            }
            s += '}';
            if (schedule_.growth == Schedule::Growth::Repeat) s += '*';
            if (schedule_.growth == Schedule::Growth::Arithmetic) s += '+' + std::to_string(schedule_.step);
            break;
        }
    }
    return s;
}

namespace {

std::uint64_t parse_uint(std::string_view t, std::string_view whole) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size() || t.empty())
        throw DomainError("bad number '" + std::string(t) + "' in sequence literal '" + std::string(whole) + "'");
    return v;
}

}  // namespace

SymbolSequence parse_sequence(std::string_view text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    const std::string_view v(t);
    const auto fail = [&](const char* why) {
        return DomainError(std::string("sequence literal '") + std::string(text) + "': " + why);
    };
    if (v.empty()) throw fail("empty");
    if (v.back() == '~') {
        if (v.size() < 2) throw fail("constant tail needs a symbol before '~'");
        const char c = v[v.size() - 2];
        if (c != '0' && c != '1') throw fail("constant tail symbol must be 0 or 1");
        return SymbolSequence::constant(parse_word(v.substr(0, v.size() - 2)), static_cast<Symbol>(c - '0'));
    }
    if (v.size() >= 2 && v.substr(v.size() - 2) == ")*") {
        const auto open = v.find('(');
        if (open == std::string_view::npos) throw fail("missing '('");
        Word per = parse_word(v.substr(open + 1, v.size() - 3 - open));
        if (per.empty()) throw fail("empty period");
        return SymbolSequence::periodic(parse_word(v.substr(0, open)), std::move(per));
    }
    const auto brace = v.find('{');
    if (brace != std::string_view::npos) {
        const auto close = v.find('}', brace);
        if (close == std::string_view::npos) throw fail("missing '}'");
        Schedule sch;
        std::string_view body = v.substr(brace + 1, close - brace - 1);
        while (!body.empty()) {
            const auto comma = body.find(',');
            sch.blocks.push_back(parse_uint(body.substr(0, comma), text));
            if (comma == std::string_view::npos) break;
            body.remove_prefix(comma + 1);
        }
        std::string_view rest = v.substr(close + 1);
        if (rest.empty()) sch.growth = Schedule::Growth::Unstated;
        else if (rest == "*") sch.growth = Schedule::Growth::Repeat;
        else if (rest.front() == '+') {
            sch.growth = Schedule::Growth::Arithmetic;
            sch.step = parse_uint(rest.substr(1), text);
        } else throw fail("unexpected text after schedule");
        return SymbolSequence::scheduled(parse_word(v.substr(0, brace)), std::move(sch));
    }
    throw fail("missing tail: use 'c~', '(word)*' or '{blocks}'");
}

SymbolSequence shift(const SymbolSequence& s, std::uint64_t n) {
    const Word& pre = s.prefix();
    if (n <= pre.size()) {
        Word p(pre.begin() + static_cast<std::ptrdiff_t>(n), pre.end());
        switch (s.kind()) {
            case SymbolSequence::TailKind::Constant: return SymbolSequence::constant(std::move(p), s.constant_symbol());
            case SymbolSequence::TailKind::Periodic: return SymbolSequence::periodic(std::move(p), s.period());
            case SymbolSequence::TailKind::Schedule: return SymbolSequence::scheduled(std::move(p), s.schedule());
        }
    }
    std::uint64_t m = n - pre.size();
    switch (s.kind()) {
        case SymbolSequence::TailKind::Constant: return SymbolSequence::constant({}, s.constant_symbol());
        case SymbolSequence::TailKind::Periodic: {
            Word per = s.period();
            std::rotate(per.begin(), per.begin() + static_cast<std::ptrdiff_t>(m % per.size()), per.end());
            return SymbolSequence::periodic({}, std::move(per));
        }
        case SymbolSequence::TailKind::Schedule: break;
    }
    const Schedule& sch = s.schedule();
    std::size_t k = 0;
    while (m >= 1 + sch.block(k)) {
        m -= 1 + sch.block(k);
        ++k;
    }
    Schedule rest;
    rest.growth = sch.growth;
    rest.step = sch.step;
    Word p;
    std::size_t first = k;
    if (m > 0) {
        p.assign(sch.block(k) - (m - 1), 0);
        first = k + 1;
    }
    const std::size_t end = std::max(sch.blocks.size(), first + 1);
    for (std::size_t j = first; j < end; ++j) rest.blocks.push_back(sch.block(j));
    return SymbolSequence::scheduled(std::move(p), std::move(rest));
}

std::uint64_t longest_run(std::span<const Symbol> w) {
    std::uint64_t best = 0;
    std::uint64_t run = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        run = (i > 0 && w[i] == w[i - 1]) ? run + 1 : 1;
        best = std::max(best, run);
    }
    return best;
}

Classification classify_sequence(const SymbolSequence& s) {
    switch (s.kind()) {
        case SymbolSequence::TailKind::Constant: return {SequenceClass::EventuallyConstant, 0};
        case SymbolSequence::TailKind::Periodic: {
            const Word w = s.take(s.prefix().size() + 3 * s.period().size());
            return {SequenceClass::Bounded, longest_run(w)};
        }
        case SymbolSequence::TailKind::Schedule: {
            const Schedule& sch = s.schedule();
            if (sch.growth == Schedule::Growth::Unstated) return {SequenceClass::Undecidable, 0};
            if (sch.growth == Schedule::Growth::Arithmetic) return {SequenceClass::Oscillating, 0};
            std::uint64_t len = s.prefix().size();
            for (std::size_t k = 0; k < sch.blocks.size() + 2; ++k) len += 1 + sch.block(k);
            return {SequenceClass::Bounded, longest_run(s.take(len))};
        }
    }
    return {SequenceClass::Undecidable, 0};
}

std::string_view to_string(SequenceClass c) {
    switch (c) {
        case SequenceClass::EventuallyConstant: return "EventuallyConstant";
        case SequenceClass::Bounded: return "Bounded";
        case SequenceClass::Oscillating: return "Oscillating";
        case SequenceClass::Undecidable: return "Undecidable";
    }
    return "?";
}

std::string_view to_string(ItineraryTag t) {
    switch (t) {
        case ItineraryTag::Symbols: return "Symbols";
        case ItineraryTag::EnteredU: return "EnteredU";
        case ItineraryTag::ExitedS: return "ExitedS";
        case ItineraryTag::HitRealAxis: return "HitRealAxis";
    }
    return "?";
}

ItineraryOutcome itinerary(Complex z, int depth) {
    if (depth < 1) throw PreconditionError("itinerary: depth must be >= 1");
    ItineraryOutcome out;
    out.symbols.reserve(static_cast<std::size_t>(depth));
    for (int n = 0; n < depth; ++n) {
        const double y = z.imag();
        if (std::abs(y - kPi) <= kLineTol || std::abs(y + kPi) <= kLineTol) {
            // L+ and L- are invariant and carry the constant itineraries.
            out.symbols.resize(static_cast<std::size_t>(depth), y > 0 ? 0 : 1);
            return out;
        }
        if (std::abs(y) > kPi) {
            out.tag = ItineraryTag::ExitedS;
            out.step = n;
            return out;
        }
        if (in_V(z)) {
            out.tag = ItineraryTag::EnteredU;
            out.step = n;
            return out;
        }
        if (std::abs(y) <= kRealAxisTol) {
            out.tag = ItineraryTag::HitRealAxis;
            out.step = n;
            return out;
        }
        out.symbols.push_back(y > 0 ? 0 : 1);
        if (n + 1 < depth) z = evaluate_f(z);
    }
    return out;
}

}  // namespace baker
