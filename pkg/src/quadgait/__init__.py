"""Statically stable quadruped gait planning and kinematic replay.

Plans wave gaits over level ground and stair flights, spinning gaits that
turn in place, and stationary-body transitions between foothold
configurations; replays the resulting timelines sample by sample while
checking stability margins, workspace membership, terrain clearance, and
support-foot slip.
"""

from .config import (
    Config,
    config_fields,
    load_config,
    make_config,
    parse_config_text,
    parse_overrides,
)
from .errors import (
    ConfigError,
    ConfigParseError,
    ConfigValidationError,
    InfeasiblePlan,
    InfeasibleState,
    MalformedTimeline,
    MissingConfigFile,
    NoSupport,
    QuadGaitError,
)
from .model import (
    LEG_IDS,
    LEG_LEFT_FRONT,
    LEG_LEFT_REAR,
    LEG_RIGHT_FRONT,
    LEG_RIGHT_REAR,
    MIRROR_LEG,
    FootholdConfig,
    RobotModel,
    RobotState,
    body_to_world,
    check_state,
    config_margin,
    config_to_world,
    default_stance,
    foot_offset,
    initial_configuration,
    kinematic_margin,
    rot_z,
    workspace_clearance,
    world_to_body,
)
from .simulate import (
    Event,
    SimTrace,
    build_case_study,
    margin_trace,
    run_case_study,
    simulate,
)
from .spin import (
    SPIN_SEQUENCE_CCW,
    SpinGeometry,
    body_rotation_support,
    body_rotation_swing,
    desired_spin_config,
    leg_arc,
    plan_spin,
    plan_spin_cycle,
    plan_spin_cycles,
    run_spin_cycle,
    spin_cycle_fractions,
    spin_geometry,
    spin_start_state,
)
from .stability import convex_hull, point_polygon_margin, stability_margin, support_polygon
from .swing import (
    SwingSpec,
    make_swing_spec,
    ramp,
    solve_apex_time,
    swing_displacement,
    swing_xy,
    swing_xy_vel,
    swing_z,
    swing_z_vel,
)
from .terrain import CompositeTerrain, FlatTerrain, StairProfile, Terrain, crossings
from .timeline import (
    Segment,
    SwingRecord,
    Timeline,
    TimelineBuilder,
    concatenate,
    mirror_state,
    mirror_timeline,
    mirror_vec,
)
from .traceio import read_trace_csv, write_trace_csv
from .transition import (
    TransitionMove,
    TransitionPlan,
    plan_reset_transition,
    plan_spin_transition,
    plan_wave_transition,
    run_transition,
    search_transition,
    state_config,
    step_margins,
    verify_transition,
)
from .svgplot import write_margin_svg, write_plots_svg, write_trajectory_svg
from .wave import (
    WAVE_SEQUENCE,
    GaitParams,
    check_stroke,
    cycles_to_clear,
    desired_wave_config,
    footprint_spacing,
    min_stroke,
    plan_level_walk,
    plan_stair_ascent,
    plan_stair_descent,
    run_wave_cycles,
    wave_start_state,
)

__version__ = "0.1.0"

__all__ = [
    "CompositeTerrain",
    "Config",
    "ConfigError",
    "ConfigParseError",
    "ConfigValidationError",
    "Event",
    "FlatTerrain",
    "FootholdConfig",
    "GaitParams",
    "InfeasiblePlan",
    "InfeasibleState",
    "LEG_IDS",
    "LEG_LEFT_FRONT",
    "LEG_LEFT_REAR",
    "LEG_RIGHT_FRONT",
    "LEG_RIGHT_REAR",
    "MIRROR_LEG",
    "MalformedTimeline",
    "MissingConfigFile",
    "NoSupport",
    "QuadGaitError",
    "RobotModel",
    "RobotState",
    "SPIN_SEQUENCE_CCW",
    "Segment",
    "SimTrace",
    "SpinGeometry",
    "StairProfile",
    "SwingRecord",
    "SwingSpec",
    "Terrain",
    "Timeline",
    "TimelineBuilder",
    "TransitionMove",
    "TransitionPlan",
    "WAVE_SEQUENCE",
    "body_rotation_support",
    "body_rotation_swing",
    "body_to_world",
    "build_case_study",
    "check_state",
    "check_stroke",
    "concatenate",
    "config_fields",
    "config_margin",
    "config_to_world",
    "convex_hull",
    "crossings",
    "cycles_to_clear",
    "default_stance",
    "desired_spin_config",
    "desired_wave_config",
    "foot_offset",
    "footprint_spacing",
    "initial_configuration",
    "kinematic_margin",
    "leg_arc",
    "load_config",
    "make_config",
    "make_swing_spec",
    "margin_trace",
    "min_stroke",
    "mirror_state",
    "mirror_timeline",
    "mirror_vec",
    "parse_config_text",
    "parse_overrides",
    "plan_level_walk",
    "plan_reset_transition",
    "plan_spin",
    "plan_spin_cycle",
    "plan_spin_cycles",
    "plan_spin_transition",
    "plan_stair_ascent",
    "plan_stair_descent",
    "plan_wave_transition",
    "point_polygon_margin",
    "ramp",
    "read_trace_csv",
    "rot_z",
    "run_case_study",
    "run_spin_cycle",
    "run_transition",
    "run_wave_cycles",
    "search_transition",
    "simulate",
    "solve_apex_time",
    "spin_cycle_fractions",
    "spin_geometry",
    "spin_start_state",
    "stability_margin",
    "state_config",
    "step_margins",
    "support_polygon",
    "swing_displacement",
    "swing_xy",
    "swing_xy_vel",
    "swing_z",
    "swing_z_vel",
    "verify_transition",
    "wave_start_state",
    "workspace_clearance",
    "world_to_body",
    "write_margin_svg",
    "write_plots_svg",
    "write_trace_csv",
    "write_trajectory_svg",
]
