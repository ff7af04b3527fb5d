# Copyright 2026 The wnoc-sim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for the wnoc-sim cycle-level MAC simulator."""

from ._core import (
    ConfigError,
    HotspotAxis,
    IntegrityFault,
    MetricsReport,
    Protocol,
    SimConfig,
    SweepRow,
    TrafficConfig,
    estimate_hurst,
    load_config,
    parse_config,
    run,
    saturation_point,
    spatial_weights,
    sweep,
)

__all__ = [
    "ConfigError",
    "HotspotAxis",
    "IntegrityFault",
    "MetricsReport",
    "Protocol",
    "SimConfig",
    "SweepRow",
    "TrafficConfig",
    "estimate_hurst",
    "load_config",
    "parse_config",
    "run",
    "saturation_point",
    "spatial_weights",
    "sweep",
]
