from ._etacoh import (
    EtacohError,
    cyclotomic,
    eta_lens,
    eta_quaternion,
    normal_form,
    order,
    run_cli,
    verify,
)

__all__ = [
    "EtacohError",
    "cyclotomic",
    "eta_lens",
    "eta_quaternion",
    "normal_form",
    "order",
    "run_cli",
    "verify",
]
