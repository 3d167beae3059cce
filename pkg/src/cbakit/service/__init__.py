"""HTTP service layer: pydantic schemas, endpoint logic, FastAPI app."""
