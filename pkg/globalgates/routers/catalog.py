"""
Catalog API: list entries and fetch one with its circuit document and report.
"""
from typing import Any, Dict, List

from fastapi import APIRouter, HTTPException, status

from globalgates.core.catalog import catalog_entry, catalog_keys
from globalgates.core.circuit import entangler_count, verify
from globalgates.core.errors import UnknownNameError
from globalgates.core.serialization import serialize
from globalgates.core.targets import target_matrix

router = APIRouter(prefix="/catalog")


@router.get("")
def list_entries() -> List[Dict[str, Any]]:
    out = []
    for key in catalog_keys():
        entry = catalog_entry(key)
        out.append(
            {
                "key": key,
                "target": entry.target.value,
                "entanglers": entangler_count(entry.circuit),
                "status": entry.status,
            }
        )
    return out


@router.get("/{key}")
def get_entry(key: str) -> Dict[str, Any]:
    try:
        entry = catalog_entry(key)
    except UnknownNameError as exc:
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail=str(exc)) from exc
    report = verify(entry.circuit, target_matrix(entry.target), entry.tolerance)
    return {
        "entry": entry.model_dump(mode="json"),
        "document": serialize(entry.circuit),
        "report": report.model_dump(mode="json"),
    }
