"""Offline stand-in for the EPyT `epanet` class.

Covers the subset of methods the fixture programs use, with matching
signatures. Element counts come from hardcoded per-network tables (pump and
valve counts match the real benchmark networks); simulation outputs are
deterministic synthetic series, not hydraulic solutions. Good enough to
exercise the envelope protocol, retrieval corpus, and benchmark plumbing
without the simulator installed.
"""

import math
import os

_NETWORKS = {
    "net1": {
        "junctions": 9,
        "reservoirs": 1,
        "tanks": 1,
        "pipes": 12,
        "pumps": 1,
        "valves": 0,
        "node_ids": ["10", "11", "12", "13", "21", "22", "23", "31", "32", "9", "2"],
        "link_ids": [
            "10", "11", "12", "21", "22", "31",
            "110", "111", "112", "113", "121", "122",
            "9",
        ],
        "seed": 11,
    },
    "net3": {
        "junctions": 92,
        "reservoirs": 2,
        "tanks": 3,
        "pipes": 117,
        "pumps": 2,
        "valves": 0,
        "node_ids": None,  # synthesized below
        "link_ids": None,
        "seed": 31,
    },
    "l-town": {
        "junctions": 782,
        "reservoirs": 2,
        "tanks": 1,
        "pipes": 905,
        "pumps": 1,
        "valves": 3,
        "node_ids": None,
        "link_ids": None,
        "seed": 77,
    },
}

_ALIASES = {"net1": "net1", "net3": "net3", "l-town": "l-town", "ltown": "l-town"}

_TIME_STEPS = 25  # 24 hours, hourly, inclusive endpoints


def _network_key(inpname):
    base = os.path.basename(inpname).lower()
    for suffix in (".inp", ".net"):
        if base.endswith(suffix):
            base = base[: -len(suffix)]
    key = _ALIASES.get(base.replace("_", "-"))
    if key is None:
        raise ValueError("unknown network file: %s" % inpname)
    return key


def _synth_ids(prefix, count, start=1):
    return ["%s%d" % (prefix, i) for i in range(start, start + count)]


class _SimResult(object):
    """Container mimicking the toolkit's computed time series object."""

    def __init__(self, **fields):
        for name, value in fields.items():
            setattr(self, name, value)


class epanet(object):
    """Stub network handle; constructor signature matches the real toolkit."""

    def __init__(self, inpname):
        self._key = _network_key(inpname)
        self._table = _NETWORKS[self._key]
        self._closed_links = set()
        n = self._table
        self._node_ids = n["node_ids"] or (
            _synth_ids("J", n["junctions"])
            + _synth_ids("R", n["reservoirs"])
            + _synth_ids("T", n["tanks"])
        )
        self._link_ids = n["link_ids"] or (
            _synth_ids("P", n["pipes"])
            + _synth_ids("PU", n["pumps"])
            + _synth_ids("V", n["valves"])
        )

    # --- counts ---

    def getNodeCount(self):
        """Retrieves the number of nodes in the network (junctions, reservoirs and tanks)."""
        return len(self._node_ids)

    def getLinkCount(self):
        """Retrieves the number of links in the network (pipes, pumps and valves)."""
        return len(self._link_ids)

    def getNodeJunctionCount(self):
        """Retrieves the number of junction nodes."""
        return self._table["junctions"]

    def getNodeReservoirCount(self):
        """Retrieves the number of reservoir nodes."""
        return self._table["reservoirs"]

    def getNodeTankCount(self):
        """Retrieves the number of tank nodes."""
        return self._table["tanks"]

    def getLinkPipeCount(self):
        """Retrieves the number of pipe links."""
        return self._table["pipes"]

    def getLinkPumpCount(self):
        """Retrieves the number of pump links."""
        return self._table["pumps"]

    def getLinkValveCount(self):
        """Retrieves the number of valve links."""
        return self._table["valves"]

    # --- identity and lookup ---

    def getNodeNameID(self, index=None):
        """Retrieves the ID label of a node given its 1-based index, or the list of all node IDs when no index is given."""
        if index is None:
            return list(self._node_ids)
        return self._node_ids[index - 1]

    def getLinkNameID(self, index=None):
        """Retrieves the ID label of a link given its 1-based index, or the list of all link IDs when no index is given."""
        if index is None:
            return list(self._link_ids)
        return self._link_ids[index - 1]

    def getNodeIndex(self, node_id):
        """Retrieves the 1-based index of the node with the given ID label."""
        return self._node_ids.index(str(node_id)) + 1

    def getLinkIndex(self, link_id):
        """Retrieves the 1-based index of the link with the given ID label."""
        return self._link_ids.index(str(link_id)) + 1

    def getLinkPipeNameID(self):
        """Retrieves the ID labels of all pipe links."""
        return self._link_ids[: self._table["pipes"]]

    def getLinkPumpNameID(self):
        """Retrieves the ID labels of all pump links."""
        p = self._table["pipes"]
        return self._link_ids[p : p + self._table["pumps"]]

    def getLinkValveNameID(self):
        """Retrieves the ID labels of all valve links."""
        return self._link_ids[self._table["pipes"] + self._table["pumps"] :]

    def getNodeJunctionNameID(self):
        """Retrieves the ID labels of all junction nodes."""
        return self._node_ids[: self._table["junctions"]]

    def getNodeReservoirNameID(self):
        """Retrieves the ID labels of all reservoir nodes."""
        j = self._table["junctions"]
        return self._node_ids[j : j + self._table["reservoirs"]]

    def getNodeTankNameID(self):
        """Retrieves the ID labels of all tank nodes."""
        return self._node_ids[self._table["junctions"] + self._table["reservoirs"] :]

    # --- static element properties ---

    def getLinkDiameter(self, index=None):
        """Retrieves the diameter of a link in millimeters given its 1-based index, or the list of all link diameters when no index is given."""
        if index is None:
            return [self._diameter(i) for i in range(1, len(self._link_ids) + 1)]
        return self._diameter(index)

    def getNodeElevations(self, index=None):
        """Retrieves the elevation of a node in meters given its 1-based index, or the list of all node elevations when no index is given."""
        if index is None:
            return [self._elevation(i) for i in range(1, len(self._node_ids) + 1)]
        return self._elevation(index)

    def getNodeBaseDemands(self, index=None):
        """Retrieves the base demand of a junction node given its 1-based index, or the list of all base demands when no index is given."""
        if index is None:
            return [self._demand(i) for i in range(1, len(self._node_ids) + 1)]
        return self._demand(index)

    # --- modifications ---

    def setLinkStatus(self, index, status):
        """Sets the initial status of a link given its 1-based index; 0 closes the link and 1 opens it."""
        if status == 0:
            self._closed_links.add(int(index))
        else:
            self._closed_links.discard(int(index))

    def setLinkDiameter(self, index, diameter):
        """Sets the diameter of a link in millimeters given its 1-based index."""
        self._diameter_overrides = getattr(self, "_diameter_overrides", {})
        self._diameter_overrides[int(index)] = float(diameter)

    # --- simulations ---

    def getComputedHydraulicTimeSeries(self):
        """Runs a complete hydraulic simulation and retrieves the computed time series, including Pressure (time steps by nodes), Flow (time steps by links) and Time in seconds."""
        shift = self._closure_shift()
        seed = self._table["seed"]
        n_nodes = len(self._node_ids)
        n_links = len(self._link_ids)
        pressure = [
            [
                round(
                    30.0
                    + 25.0 * math.sin(0.7 * n + 0.3 * t + seed)
                    + ((n * 37 + t * 17 + seed) % 13)
                    + shift,
                    4,
                )
                for n in range(n_nodes)
            ]
            for t in range(_TIME_STEPS)
        ]
        flow = [
            [
                0.0
                if (l + 1) in self._closed_links
                else round(8.0 + 6.0 * math.cos(0.5 * l + 0.25 * t + seed), 4)
                for l in range(n_links)
            ]
            for t in range(_TIME_STEPS)
        ]
        return _SimResult(
            Pressure=pressure,
            Flow=flow,
            Time=[t * 3600 for t in range(_TIME_STEPS)],
        )

    def getComputedQualityTimeSeries(self):
        """Runs a complete water quality simulation and retrieves the computed time series; NodeQuality holds the quality value per time step and node (water age in hours when the network is configured for age analysis)."""
        if self._key != "l-town":
            raise RuntimeError("water quality analysis is not configured for this network")
        seed = self._table["seed"]
        n_nodes = len(self._node_ids)
        quality = [
            [round(0.8 * t + ((n * 7 + seed) % 24) * 0.5, 4) for n in range(n_nodes)]
            for t in range(_TIME_STEPS)
        ]
        return _SimResult(
            NodeQuality=quality, Time=[t * 3600 for t in range(_TIME_STEPS)]
        )

    def unload(self):
        """Unloads the network and frees the toolkit's resources."""
        self._closed_links.clear()

    # --- internal deterministic tables ---

    def _diameter(self, index):
        overrides = getattr(self, "_diameter_overrides", {})
        if index in overrides:
            return overrides[index]
        return float(100 + ((index * 29 + self._table["seed"]) % 12) * 25)

    def _elevation(self, index):
        return round(200.0 + ((index * 53 + self._table["seed"]) % 40) * 2.5, 2)

    def _demand(self, index):
        if index > self._table["junctions"]:
            return 0.0
        return round(0.5 + ((index * 19 + self._table["seed"]) % 9) * 0.25, 3)

    def _closure_shift(self):
        shift = 0.0
        for index in sorted(self._closed_links):
            shift -= 1.0 + (index * 13 % 7) * 0.5
        return shift
