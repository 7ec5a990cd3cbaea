from .cones import cones_group
from .lengths import lengths_command
from .signature import signature_command, triangle_command
from .trace_eval import trace_eval_command
from .wave import wave_group

all_commands = (
    signature_command,
    triangle_command,
    lengths_command,
    trace_eval_command,
    wave_group,
    cones_group,
)
