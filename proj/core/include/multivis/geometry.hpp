//---------------------------------------------------------------------------//
//! \file multivis/geometry.hpp
//! \brief Logical/physical volume hierarchy and its rollout into touchables.
//---------------------------------------------------------------------------//
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "attributes.hpp"
#include "solids.hpp"

namespace multivis
{
//---------------------------------------------------------------------------//
enum class MaterialState
{
    undefined,
    solid,
    liquid,
    gas,
};

char const* to_cstring(MaterialState);
std::optional<MaterialState> material_state_from_string(std::string_view);

struct Material
{
    std::string name;
    double density{0};  //!< g/mm3
    MaterialState state{MaterialState::undefined};
    std::optional<double> radiation_length;  //!< mm
};

using MaterialPtr = std::shared_ptr<Material const>;

//! Validated material; density must be positive unless the state is undefined.
MaterialPtr make_material(std::string name,
                          double density,
                          MaterialState state,
                          std::optional<double> radiation_length = std::nullopt);

class PhysicalVolume;
using PhysicalVolumePtr = std::shared_ptr<PhysicalVolume>;

//---------------------------------------------------------------------------//
class LogicalVolume
{
  public:
    LogicalVolume(std::string name, SolidPtr solid, MaterialPtr material);

    std::string const& name() const { return name_; }
    SolidPtr const& solid() const { return solid_; }
    MaterialPtr const& material() const { return material_; }
    VisAttributes const& vis() const { return vis_; }
    VisAttributes& vis() { return vis_; }
    std::vector<PhysicalVolumePtr> const& daughters() const
    {
        return daughters_;
    }

    /*!
     * Place a daughter.
     *
     * Throws std::invalid_argument if the daughter's transformed bounds leave
     * this volume's bounding box (1e-6 mm slack) or if the placement would
     * create a containment cycle.
     */
    void add_daughter(PhysicalVolumePtr pv);

    //! True if lv appears in this volume's subtree (including itself).
    bool contains_logical(LogicalVolume const* lv) const;

  private:
    std::string name_;
    SolidPtr solid_;
    MaterialPtr material_;
    VisAttributes vis_;
    std::vector<PhysicalVolumePtr> daughters_;
};

using LogicalVolumePtr = std::shared_ptr<LogicalVolume>;

//---------------------------------------------------------------------------//
enum class Axis
{
    x,
    y,
    z,
};

//! Slices of width `width` centred on the mother origin along `axis`.
struct Replica
{
    Axis axis{Axis::z};
    int count{1};
    double width{0};
};

class PhysicalVolume
{
  public:
    PhysicalVolume(std::string name,
                   LogicalVolumePtr logical,
                   Transform transform = {});
    PhysicalVolume(std::string name, LogicalVolumePtr logical, Replica replica);

    std::string const& name() const { return name_; }
    LogicalVolumePtr const& logical() const { return logical_; }
    std::optional<Replica> const& replica() const { return replica_; }

    //! Number of placements this volume stands for.
    int multiplicity() const { return replica_ ? replica_->count : 1; }
    //! Placement of one copy in the mother frame.
    Transform transform(int copy = 0) const;

  private:
    std::string name_;
    LogicalVolumePtr logical_;
    Transform transform_;
    std::optional<Replica> replica_;
};

//---------------------------------------------------------------------------//
struct PathElement
{
    std::string name;
    int copy{0};

    friend bool operator==(PathElement const&, PathElement const&) = default;
};

using TouchablePath = std::vector<PathElement>;

//! "/World:0/Envelope:0"
std::string to_string(TouchablePath const& path);

struct Touchable
{
    TouchablePath path;
    Transform world_transform;
    SolidPtr solid;
    LogicalVolume const* logical{nullptr};
    PhysicalVolume const* physical{nullptr};
    VisAttributes vis;
    int depth{0};
};

inline constexpr int unlimited_depth = -1;
inline constexpr int max_descent_depth = 64;

//! Count plus a warning when nothing matched.
struct EditResult
{
    int changed{0};
    std::string warning;
};

//---------------------------------------------------------------------------//
/*!
 * A world volume plus the per-touchable attribute overrides.
 */
class Detector
{
  public:
    explicit Detector(PhysicalVolumePtr world);

    PhysicalVolumePtr const& world() const { return world_; }

    //! First logical volume with this name (pre-order), or null.
    LogicalVolume* find_logical(std::string_view name) const;
    //! First physical volume with this name (pre-order), or null.
    PhysicalVolume const* find_physical(std::string_view name) const;

    //! Depth 0 edits only the named volume; depth < 0 edits the whole subtree.
    EditResult
    set_logical_vis(std::string_view name, int depth, VisPatch const& patch);
    EditResult set_touchable_vis(TouchablePath const& path, VisPatch const& patch);
    void clear_touchable_overrides() { overrides_.clear(); }
    std::map<std::string, VisPatch> const& overrides() const
    {
        return overrides_;
    }

    /*!
     * Depth-first pre-order rollout.
     *
     * Throws std::runtime_error past max_descent_depth.
     */
    std::vector<Touchable> descend(int depth_limit, bool cull_invisible) const;
    /*!
     * Rollout of the subtree below an existing touchable.
     *
     * Paths, transforms and depths stay global; depth_limit counts levels
     * below the top.
     */
    std::vector<Touchable>
    descend(Touchable const& top, int depth_limit, bool cull_invisible) const;

    //! Every placement of a named physical volume (no culling).
    std::vector<Touchable> find_touchables(std::string_view pv_name) const;

  private:
    PhysicalVolumePtr world_;
    std::map<std::string, VisPatch> overrides_;

    std::vector<Touchable>
    descend_impl(Touchable const* top, int depth_limit, bool cull_invisible) const;
};

//---------------------------------------------------------------------------//
// Mass accounting
//---------------------------------------------------------------------------//
struct MassNode
{
    PhysicalVolume const* volume{nullptr};
    int copy{0};
    int multiplicity{1};  //!< times this node counts in its mother
    int depth{0};
    double own_volume{0};  //!< mm3
    double ds_volume{0};  //!< daughter-subtracted, mm3
    double density{0};
    double mass{0};  //!< density * ds_volume
    double di_mass{0};  //!< daughter-included
    std::vector<MassNode> daughters;
};

/*!
 * Volumes and masses of a subtree.
 *
 * A node at the depth limit counts as a leaf with its full volume. Throws
 * std::runtime_error if daughters exceed their mother's volume.
 */
MassNode compute_masses(PhysicalVolume const& top, int depth_limit);

//! Touchable attribute values with best units.
AttValues touchable_attributes(Touchable const& t);

}  // namespace multivis
