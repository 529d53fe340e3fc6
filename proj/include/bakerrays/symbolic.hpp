#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bakerrays/core_map.hpp"
#include "bakerrays/word.hpp"

namespace baker {

// Tail of the form 1 0^{b_1} 1 0^{b_2} ... . Blocks past the explicit list follow
// `growth`: Repeat reuses the last block, Arithmetic adds `step` each time, and
// Unstated repeats the last block for symbol retrieval but makes the sequence
// unclassifiable.
struct Schedule {
    enum class Growth { Unstated, Repeat, Arithmetic };
    std::vector<std::uint64_t> blocks;
    Growth growth = Growth::Unstated;
    std::uint64_t step = 0;

    std::uint64_t block(std::size_t k) const;
    bool operator==(const Schedule&) const = default;
};

class SymbolSequence {
public:
    enum class TailKind { Constant, Periodic, Schedule };

    static SymbolSequence constant(Word prefix, Symbol c);
    static SymbolSequence periodic(Word prefix, Word period);
    static SymbolSequence scheduled(Word prefix, Schedule schedule);

    Symbol at(std::uint64_t n) const;
    Word take(std::uint64_t n) const;

    const Word& prefix() const { return prefix_; }
    TailKind kind() const { return kind_; }
    Symbol constant_symbol() const { return constant_; }
    const Word& period() const { return period_; }
    const Schedule& schedule() const { return schedule_; }

    // Literal form accepted by parse_sequence.
    std::string to_string() const;

    bool operator==(const SymbolSequence&) const = default;

private:
    SymbolSequence() = default;
    void normalize();

    Word prefix_;
    TailKind kind_ = TailKind::Constant;
    Symbol constant_ = 0;
    Word period_;
    Schedule schedule_;
};

// Literals: "0110(01)*", "10~", "1~", "{3,4,5}+1" (schedule, arithmetic growth),
// "{2,2}*" (repeat last block), "{1,5}" (unstated growth). Spaces are ignored.
SymbolSequence parse_sequence(std::string_view text);

SymbolSequence shift(const SymbolSequence& s, std::uint64_t n = 1);

enum class SequenceClass { EventuallyConstant, Bounded, Oscillating, Undecidable };

struct Classification {
    SequenceClass kind;
    std::uint64_t max_block = 0;  // longest run of equal symbols, for Bounded
};

Classification classify_sequence(const SymbolSequence& s);
std::string_view to_string(SequenceClass c);

// Longest run of equal symbols in a finite word.
std::uint64_t longest_run(std::span<const Symbol> w);

enum class ItineraryTag { Symbols, EnteredU, ExitedS, HitRealAxis };

struct ItineraryOutcome {
    ItineraryTag tag = ItineraryTag::Symbols;
    Word symbols;   // symbols recorded before stopping
    int step = -1;  // stopping step for the non-Symbols tags
};

inline constexpr double kRealAxisTol = 1e-12;

// Points within kLineTol of L+ or L- are snapped to the line, whose itinerary is constant.
ItineraryOutcome itinerary(Complex z, int depth);
std::string_view to_string(ItineraryTag t);

struct OscillatingOptions {
    double eps = 1.0;          // continuity radius between stage rays and the final ray
    double scan_step = 0.25;   // t increment of the upward scan
    double scan_span = 40.0;   // how far past the start the scan may go
    std::uint64_t growth = 1;  // arithmetic growth of blocks past the requested radii
    double tol = 1e-10;
};

// Blocks n_1, n_2, ... of 1 0^{n_1} 1 0^{n_2} ... chosen so that the final ray passes
// beyond each requested radius. Throws ScanExhausted when a stage ray never gets there.
SymbolSequence build_oscillating_sequence(std::span<const double> radii, double t_probe = -3.0,
                                          const OscillatingOptions& opt = {});

}  // namespace baker
