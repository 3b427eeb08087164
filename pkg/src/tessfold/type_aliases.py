from typing import Any, Dict, List, Tuple, Union

import numpy as np
import numpy.typing as npt

FloatArray = npt.NDArray[np.float64]

GridType = Tuple[int, int]
MVAssignmentType = List[str]
VertexModesType = Tuple[int, ...]
LoopProductsType = Dict[Tuple[int, int, int, int], float]

FoldDocumentType = Dict[str, Any]
ReportType = Dict[str, Any]
TableRowType = Dict[str, Union[str, int, float]]
TableType = List[TableRowType]
