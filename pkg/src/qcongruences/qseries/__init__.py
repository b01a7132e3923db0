"""Truncated q-series, their named constructors, and the partition oracle."""

from .oracle import PartitionSpec
from .qfactory import PochhammerSpec, ThetaSpec
from .series import Comparison, Series

__all__ = ["Comparison", "PartitionSpec", "PochhammerSpec", "Series", "ThetaSpec"]
