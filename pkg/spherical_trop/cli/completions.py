"""
Author:
    Inspyre Softworks

Project:
    SphericalTrop

File:
    spherical_trop/cli/completions.py


Description:
    Shell completion script generation for the SphericalTrop CLI.

"""
from __future__ import annotations

from typing import Final, Iterable, Mapping

PROG: Final[str] = 'spherical-trop'
SUPPORTED_SHELLS: Final[frozenset[str]] = frozenset({'bash', 'zsh', 'fish'})


def emit_completion_script(
    shell: str,
    commands: Iterable[str],
    flags: Iterable[str],
    subcommand_flags: Mapping[str, Iterable[str]] | None = None,
) -> str:
    """
    Generate a shell completion script for the given shell.

    Parameters
    ----------
    shell:
        Target shell name (bash, zsh, fish).
    commands:
        Iterable of supported subcommands.
    flags:
        Iterable of supported top-level flags.
    subcommand_flags:
        Mapping of subcommand name to iterable of flags/options for that subcommand.

    Returns
    -------
    str
        The completion script content.
    """
    if shell not in SUPPORTED_SHELLS:
        supported = ', '.join(sorted(SUPPORTED_SHELLS))
        raise ValueError(f"Unsupported shell '{shell}'. Supported shells: {supported}")

    sub_flags = {name: tuple(sorted(values)) for name, values in (subcommand_flags or {}).items()}
    commands_list = ' '.join(sorted(commands))
    flags_list = ' '.join(sorted(flags))
    shells_list = ' '.join(sorted(SUPPORTED_SHELLS))

    if shell == 'bash':
        cases = '\n'.join(
            f'        {name})\n'
            f'            if [[ "$cur" == -* ]]; then\n'
            f'                COMPREPLY=($(compgen -W "{" ".join(values)}" -- "$cur"))\n'
            f'            else\n'
            f'                COMPREPLY=($(compgen -f -- "$cur"))\n'
            f'            fi\n'
            f'            ;;'
            for name, values in sorted(sub_flags.items())
            if name != 'completion'
        )
        return f"""# Bash completion for {PROG}
_spherical_trop_completions() {{
    local cur
    COMPREPLY=()
    cur="${{COMP_WORDS[COMP_CWORD]}}"

    if [[ $COMP_CWORD -eq 1 ]]; then
        COMPREPLY=($(compgen -W "{commands_list} {flags_list}" -- "$cur"))
        return 0
    fi

    case "${{COMP_WORDS[1]}}" in
        completion)
            COMPREPLY=($(compgen -W "{shells_list}" -- "$cur"))
            ;;
{cases}
    esac
}}
complete -F _spherical_trop_completions {PROG}
"""

    if shell == 'zsh':
        cases = '\n'.join(
            f"                {name})\n"
            f"                    _values '{name} options' {' '.join(values)}\n"
            f"                    ;;"
            for name, values in sorted(sub_flags.items())
            if name != 'completion'
        )
        return f"""#compdef {PROG}

_spherical_trop() {{
    local -a commands
    commands=({commands_list})

    _arguments \\
        "1: :->command" \\
        "*::arg:->args"

    case $state in
        command)
            _values '{PROG} commands' $commands
            ;;
        args)
            case $words[1] in
                completion)
                    _values 'shell' {shells_list}
                    ;;
{cases}
            esac
            ;;
    esac
}}

_spherical_trop "$@"
"""

    lines = [
        f'# Fish completion for {PROG}',
        f'complete -c {PROG} -n "not __fish_seen_subcommand_from {commands_list}" -s V -l version -d "Show version and environment info"',
        f'complete -c {PROG} -n "not __fish_seen_subcommand_from {commands_list}" -s h -l help -d "Show help"',
        f'complete -c {PROG} -n "__fish_use_subcommand" -a "{commands_list}" -d "{PROG} commands"',
        f'complete -c {PROG} -n "__fish_seen_subcommand_from completion" -a "{shells_list}" -d "Target shell"',
    ]
    for name, values in sorted(sub_flags.items()):
        for flag in values:
            if flag.startswith('--'):
                lines.append(f'complete -c {PROG} -n "__fish_seen_subcommand_from {name}" -l {flag[2:]}')
            else:
                lines.append(f'complete -c {PROG} -n "__fish_seen_subcommand_from {name}" -s {flag[1:]}')
    return '\n'.join(lines) + '\n'


__all__ = ['SUPPORTED_SHELLS', 'emit_completion_script']
