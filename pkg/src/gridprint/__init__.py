"""Energy and carbon model of centralized vs peer-to-peer cloud storage."""

from .catalog import (
    Catalog,
    CatalogError,
    NetworkDeviceSpec,
    NetworkKind,
    StorageRackSpec,
    builtin_catalog,
    dump_catalog,
    load_catalog,
    per_bit_energy,
)
from .scenarios import (
    ArchitectureModel,
    FleetModel,
    PaperRounding,
    Scenario,
    ScenarioReport,
    build_architectures,
    compare,
    fleet_scenario,
    fleet_volume,
    per_pb_backup_footprint,
    scenario_energy,
)
from .storage import (
    CUBBIT_CELL,
    DiskVariant,
    DistributedDeviceSpec,
    StoragePowerDensity,
    distributed_storage_power,
    fleet_mean_storage_power,
    rack_storage_power,
    storage_delta,
)
from .transfer import (
    HopModel,
    NetworkPath,
    OverheadFactors,
    PathSegment,
    centralized_path,
    core_hops_from_distance,
    distributed_path,
    path_energy_per_gb,
    path_with_hops,
)

__version__ = "0.1.0"
