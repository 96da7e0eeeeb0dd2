"""Machine-preference image quality benchmark toolkit."""

__version__ = "0.1.0"

SCHEMA_VERSIONS = {
    "responses": "mviqa.responses/1",
    "manifest": "mviqa.manifest/1",
    "mos": "mviqa.mos/1",
    "split": "mviqa.split/1",
    "events": "mviqa.events/1",
    "schedule": "mviqa.schedule/1",
}
