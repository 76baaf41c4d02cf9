#pragma once

// Layer Packing of squares into the unit disk, its subroutines, a packing
// validator and instance generators.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqdisk/geometry.hpp"

namespace sqdisk {

class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Instance {
    std::vector<double> sides;
    double total_area() const;
};

// Throws InputError on a nonpositive or nonfinite side.
void check_instance(const Instance& instance);

struct Packing {
    std::vector<PlacedSquare> placements;  // placements[i] holds input square i
    double container_radius = 1.0;
};

enum class CaseTag : std::uint8_t { C1, C2, C3 };
enum class FailureReason : std::uint8_t { AreaExceedsGuarantee, NoPlacementFound };
enum class Region : std::uint8_t { Pocket, Container, TopLeft, TopRight, Subcontainer };

const char* to_string(CaseTag c);
const char* to_string(FailureReason r);
const char* to_string(Region r);

struct TraceEntry {
    std::size_t index = 0;  // input index
    Region region = Region::Container;
    int container = 0;      // pocket number, or subcontainer number
    bool slid = false;
    double band_lo = 0.0;   // y-extent of the shelf the square went into
    double band_hi = 0.0;
};

struct SubcontainerInfo {
    double top = 0.0;
    double height = 0.0;
    bool fill_from_top = true;
};

struct Failure {
    FailureReason reason = FailureReason::NoPlacementFound;
    std::size_t failed_index = 0;  // input index of the first square that could not be placed
    std::size_t failed_rank = 0;   // its position in the sorted order
};

struct PackResult {
    CaseTag case_tag = CaseTag::C3;
    Packing packing;  // complete when packed(); partial otherwise
    std::optional<Failure> failure;
    std::vector<TraceEntry> trace;
    std::vector<SubcontainerInfo> subcontainers;

    bool packed() const { return !failure.has_value(); }
};

struct PackOptions {
    double tol = kDefaultTol;
};

PackResult pack(const Instance& instance, const PackOptions& options = {});

// Indices of the sides in nonincreasing order, ties by input index.
std::vector<std::size_t> sorted_order(const std::vector<double>& sides);
CaseTag select_case(const std::vector<double>& sorted_sides);

struct ShelfResult {
    std::vector<PlacedSquare> placed;      // relative to the container's lower-left corner
    std::optional<std::size_t> failed_at;  // position in `squares`
};

// Moon-Moser shelf packing of nonincreasing squares into a width x height box.
// Shelves run parallel to the shorter side.
ShelfResult shelf_pack(double width, double height, const std::vector<double>& squares);

// Refined-shelf placement along a vertical line: returns the ordinate for a
// square with left side x and side s, starting from the flush ordinate y0
// and constrained to [lo, hi]. Slides toward y = 0 by the minimal amount
// when the flush position leaves the disk and [lo, hi] contains 0.
struct SlidePlacement {
    double y = 0.0;
    bool slid = false;
};
std::optional<SlidePlacement> refined_shelf_place(double x, double s, double y0, double lo, double hi, double tol);

// Mutable state of case C3: s1, the two pockets and the subcontainer stack.
class PackState {
public:
    PackState(double s1, double tol);

    const PlacedSquare& first() const { return first_; }
    const PocketGeometry& pocket() const { return geom_; }
    bool horizontal_pocket_shelves() const { return geom_.bx <= geom_.by; }
    const std::vector<SubcontainerInfo>& subcontainers() const { return subs_; }

    struct Placement {
        PlacedSquare square;
        Region region = Region::Subcontainer;
        int container = 0;
        bool slid = false;
        double band_lo = 0.0;
        double band_hi = 0.0;
    };

    std::optional<Placement> top_pack_try(double s);
    std::optional<Placement> bottom_pack(double s);

private:
    struct PocketCursor {
        bool open = false;
        double lane = 0.0;       // horizontal: shelf bottom; vertical: column edge nearest s1
        double thickness = 0.0;  // first square of the current shelf
        double cursor = 0.0;     // horizontal: x edge; vertical: next ordinate
    };
    struct Sub {
        double top = 0.0;
        double bottom = 0.0;
        bool from_top = true;
        double col_x = 0.0;      // left edge of the current column
        double col_width = 0.0;
        double cursor = 0.0;     // next free ordinate inside the column
    };

    std::optional<Placement> try_pocket(PocketCursor& pc, double s, bool mirrored, int id);
    std::optional<Placement> pocket_horizontal(PocketCursor& pc, double s);
    std::optional<Placement> pocket_vertical(PocketCursor& pc, double s);
    std::optional<Placement> try_sub(Sub& sub, double s);
    std::optional<Placement> place_in_column(const Sub& sub, double x, double s, double cursor);

    double tol_;
    double s1_;
    PlacedSquare first_;
    PocketGeometry geom_;
    double pocket_top_ = 0.0;
    PocketCursor left_;
    PocketCursor right_;
    std::vector<Sub> sub_state_;
    std::vector<SubcontainerInfo> subs_;
};

struct ValidationReport {
    std::vector<std::size_t> outside;                              // squares leaving the disk
    std::vector<std::pair<std::size_t, std::size_t>> overlaps;     // interior-intersecting pairs
    bool ok() const { return outside.empty() && overlaps.empty(); }
};

ValidationReport validate(const Packing& packing, double tol = kDefaultTol);

enum class Distribution : std::uint8_t { Uniform, Powerlaw, Equal, AdversarialTop4 };

const char* to_string(Distribution d);
std::optional<Distribution> parse_distribution(const std::string& name);

Instance gen_worst_case(double epsilon);
Instance gen_random(std::uint64_t seed, std::size_t n, double target_area, Distribution dist);

}  // namespace sqdisk
