from .critical_line_controller import CriticalLineController
from .domain_controller import DomainController
from .forms_controller import FormsController
from .holomorphy_controller import HolomorphyController
from .kernel_controller import KernelController
from .norm_controller import NormController
from .report_controller import ReportController
