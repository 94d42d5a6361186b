from hcov.config import settings
from hcov.main import cli

cli(prog_name=settings.app_name)
