"""Serialization of command outputs.

Modules here own the on-disk contracts: Pydantic record models for JSON
results and fixed-column CSV traces. They are separate from renderers/
(human-readable text) and from the computation packages.

Modules:
    records: PopulationRecord, PlanRecord, SimulationRecord, ExperimentRecord,
             ResultBundle
    traces: learning-curve, candidate-evaluation and choice CSVs
"""
