"""wallbot: deterministic 2D wall-following robot simulator and trainer.

A small toolkit reproducing a classic autonomous-robot pipeline: five-angle
IR distance scanning, 8-bit ADC conversion with binary thresholding, a
tanh feed-forward network trained by backpropagation on a 14-row decision
table, and car-like motion quantized to stepper-motor steps. Everything is
deterministic: same inputs, same bytes out.
"""

from .ann import (
    DECISION_TABLE,
    Decision,
    DecisionConfig,
    Hyperparams,
    Network,
    NonConvergenceError,
    TrainingSet,
    backprop_step,
    builtin_training_set,
    classify,
    export_weights_float,
    forward,
    load_weights_float,
    parse_weights_float,
    train,
)
from .controller import (
    ControllerConfig,
    ControllerState,
    HaltReason,
    ManeuverKind,
    ManeuverPlan,
    decide,
    oracle_decide,
    plan,
    scan_sequence,
    tick,
)
from .fixedpoint import (
    FixedPointOverflowError,
    QuantizedNetwork,
    classify_fixed,
    export_weights_fixed,
    load_weights_fixed,
    parse_weights_fixed,
    quantize_network,
)
from .scenario import (
    Scenario,
    ScenarioInvariantError,
    ScenarioParseError,
    dump_scenario,
    load_builtin_scenario,
    load_scenario,
    parse_scenario,
)
from .sensor import (
    CalibrationTable,
    ScanVector,
    SensorConfig,
    adc_from_distance,
    default_calibration,
    load_calibration,
    parse_calibration,
    sense,
    threshold_bit,
)
from .simulate import TraceRecord, emit_plot_svg, emit_trace_csv, run, trace_csv, trace_svg
from .vehicle import (
    MotionConfig,
    StepCommand,
    SteerOutOfRangeError,
    drive,
    step_distance,
    turn_step_count,
)
from .world import Environment, Pose, WallSegment, cast_ray, normalize_angle, point_in_collision

__version__ = "0.1.0"
