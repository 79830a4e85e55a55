/** Tab shell and session handling. Only the session token ever touches
 * browser storage; credentials go straight to the login call. */

import { ApiClient, ApiError } from './api';
import { clear, h } from './dom';
import { SelectionState } from './state';
import { renderCurrentLinks } from './views/currentLinks';
import { renderLinkCreation } from './views/linkCreation';
import { renderSettings } from './views/settings';

const TOKEN_KEY = 'leo_token';

type TabName = 'settings' | 'link-creation' | 'current-links';

export class App {
  readonly selection = new SelectionState();
  private active: TabName = 'settings';

  constructor(
    private readonly root: HTMLElement,
    readonly api: ApiClient = new ApiClient(),
  ) {}

  start(): void {
    const stored = window.sessionStorage.getItem(TOKEN_KEY);
    if (stored) {
      this.api.token = stored;
      void this.renderShell();
    } else {
      this.renderLogin();
    }
  }

  private renderLogin(message?: string): void {
    clear(this.root);
    const username = h('input', { className: 'login-username', placeholder: 'Username' });
    const password = h('input', {
      className: 'login-password', placeholder: 'Password', type: 'password',
    });
    const error = h('p', { className: 'error', hidden: !message }, message ?? '');
    const form = h('form', { className: 'login-form' },
      h('h1', {}, 'Sign in'),
      h('p', {}, 'Credentials are validated by the configured repository instance.'),
      username, password,
      h('button', { textContent: 'Log in' }),
      error);
    form.addEventListener('submit', async (event) => {
      event.preventDefault();
      try {
        const token = await this.api.login(username.value, password.value);
        window.sessionStorage.setItem(TOKEN_KEY, token);
        await this.renderShell();
      } catch (cause) {
        error.textContent = cause instanceof ApiError
          ? `${cause.message} (${cause.code})` : String(cause);
        error.hidden = false;
      }
    });
    this.root.append(form);
  }

  async renderShell(): Promise<void> {
    clear(this.root);
    const content = h('main', { className: 'tab-content' });
    const tabs: [TabName, string][] = [
      ['settings', 'Settings'],
      ['link-creation', 'Link Creation'],
      ['current-links', 'Current Links'],
    ];
    const bar = h('nav', { className: 'tab-bar' });
    for (const [name, label] of tabs) {
      const button = h('button', {
        className: name === this.active ? 'tab active' : 'tab',
        dataset: { tab: name },
      }, label);
      button.addEventListener('click', () => {
        this.active = name;
        void this.renderShell();
      });
      bar.append(button);
    }
    const logout = h('button', { className: 'logout', textContent: 'Log out' });
    logout.addEventListener('click', async () => {
      try {
        await this.api.logout();
      } finally {
        window.sessionStorage.removeItem(TOKEN_KEY);
        this.renderLogin();
      }
    });
    bar.append(logout);
    this.root.append(bar, content);

    try {
      await this.renderTab(content);
    } catch (cause) {
      if (cause instanceof ApiError && cause.status === 401) {
        window.sessionStorage.removeItem(TOKEN_KEY);
        this.renderLogin('Session expired, sign in again.');
        return;
      }
      content.append(h('p', { className: 'error' }, String(cause)));
    }
  }

  renderTab(content: HTMLElement): Promise<void> {
    switch (this.active) {
      case 'settings':
        return renderSettings(content, { api: this.api });
      case 'link-creation':
        return renderLinkCreation(content, {
          api: this.api,
          selection: this.selection,
          onLinkCreated: () => {
            this.active = 'current-links';
            void this.renderShell();
          },
        });
      case 'current-links':
        return renderCurrentLinks(content, { api: this.api });
    }
  }
}

if (typeof document !== 'undefined' && document.getElementById('app')) {
  new App(document.getElementById('app') as HTMLElement).start();
}
